#pragma once

#include <span>
#include <vector>

namespace aisim {

// Mann-Whitney U statistic for x against y (counts x_i > y_j, ties as 0.5).
double u_statistic(std::span<const double> x, std::span<const double> y);

// Exact two-sided p by full enumeration of label arrangements. Intended for
// small samples; cost is C(|x|+|y|, |x|).
double mann_whitney_exact(std::span<const double> x, std::span<const double> y);

// Normal approximation with tie correction and continuity correction.
double mann_whitney_approx(std::span<const double> x, std::span<const double> y);

// Exact when |x| + |y| <= 14, approximate otherwise. Throws on empty samples.
double mann_whitney(std::span<const double> x, std::span<const double> y);

// Vargha-Delaney A: probability of superiority of x over y.
double a_test(std::span<const double> x, std::span<const double> y);

struct Summary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
};

// Median by midpoint convention, quartiles by linear interpolation.
Summary summarize(std::vector<double> values);

}  // namespace aisim
