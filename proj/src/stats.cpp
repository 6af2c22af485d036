#include "aisim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace aisim {

namespace {

void require_nonempty(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw std::runtime_error("statistics require nonempty samples");
}

double u_of_subset(const std::vector<double>& values, const std::vector<int>& mask) {
    double u = 0.0;
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask[j]) continue;
            if (values[i] > values[j]) u += 1.0;
            else if (values[i] == values[j]) u += 0.5;
        }
    }
    return u;
}

}  // namespace

double u_statistic(std::span<const double> x, std::span<const double> y) {
    require_nonempty(x, y);
    double u = 0.0;
    for (double a : x) {
        for (double b : y) {
            if (a > b) u += 1.0;
            else if (a == b) u += 0.5;
        }
    }
    return u;
}

double mann_whitney_exact(std::span<const double> x, std::span<const double> y) {
    require_nonempty(x, y);
    const double nm = static_cast<double>(x.size()) * static_cast<double>(y.size());
    const double u_obs = u_statistic(x, y);
    const double extreme_obs = std::min(u_obs, nm - u_obs);

    std::vector<double> values(x.begin(), x.end());
    values.insert(values.end(), y.begin(), y.end());

    // mask with |x| ones, stepped through every arrangement
    std::vector<int> mask(values.size(), 0);
    std::fill(mask.begin(), mask.begin() + x.size(), 1);
    std::sort(mask.begin(), mask.end(), std::greater<int>());

    long long total = 0, hits = 0;
    do {
        const double u = u_of_subset(values, mask);
        if (std::min(u, nm - u) <= extreme_obs + 1e-12) ++hits;
        ++total;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

double mann_whitney_approx(std::span<const double> x, std::span<const double> y) {
    require_nonempty(x, y);
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    const double big_n = n + m;
    const double u = u_statistic(x, y);
    const double mean = n * m / 2.0;

    // tie counts over the pooled sample
    std::map<double, double> ties;
    for (double v : x) ties[v] += 1.0;
    for (double v : y) ties[v] += 1.0;
    double tie_term = 0.0;
    for (const auto& [value, t] : ties) tie_term += t * t * t - t;

    const double var =
        (n * m / 12.0) * ((big_n * big_n * big_n - big_n - tie_term) / (big_n * (big_n - 1.0)));
    if (var <= 0.0) return 1.0;  // all pooled values identical
    const double z = std::max(0.0, std::abs(u - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double mann_whitney(std::span<const double> x, std::span<const double> y) {
    require_nonempty(x, y);
    if (x.size() + y.size() <= 14) return mann_whitney_exact(x, y);
    return mann_whitney_approx(x, y);
}

double a_test(std::span<const double> x, std::span<const double> y) {
    require_nonempty(x, y);
    return u_statistic(x, y) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

namespace {

// Quantile with linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

Summary summarize(std::vector<double> values) {
    if (values.empty()) throw std::runtime_error("summarize: empty sample");
    std::sort(values.begin(), values.end());
    Summary s;
    const std::size_t n = values.size();
    s.median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    s.q1 = quantile(values, 0.25);
    s.q3 = quantile(values, 0.75);
    s.iqr = s.q3 - s.q1;
    return s;
}

}  // namespace aisim
