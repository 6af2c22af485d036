#pragma once

#include <span>
#include <vector>

#include "aisim/genome.hpp"

namespace aisim {

struct ImmuneConfig {
    double k1 = 0.30;        // stimulation constant
    double k2 = 1.85;        // suppression constant
    double k3 = 0.0;         // antibody death rate
    double clone_scale = 200.0;        // b
    double concentration_scale = 25.0; // phi
    double initial_clones = 1000.0;    // N0
    double rho_stl = 8.0;    // cost weight when rating solution sets
    double learning_rate = 0.3;        // lambda, online paratope update
    bool idiotypic_enabled = true;
    // Scale applied to the stimulation/suppression sums (divided by the antibody
    // count y); the combination rule can be swapped without touching callers.
    // Together with learning_rate this pair keeps the mean idiotypic
    // difference rate on generated mazes inside the 0.65..0.85 target band.
    double network_gain = 3.0;
    double paratope_floor = 0.01;
};

// Measured episode cost for a solution set, used to weight its paratope row.
struct EpisodeCost {
    double time = 0.0;
    int collisions = 0;
};

struct SelectionReport {
    int antigen = 0;        // 1..8
    int antigenic_set = 0;  // argmax paratope
    int selected_set = 0;   // argmax concentration (or antigenic when disabled)
    double alpha = 0.0;     // stimulation applied to the selected set
    double delta = 0.0;     // suppression applied to the selected set
    bool differed = false;  // selected != antigenic
};

// The idiotypic network over a loaded repertoire: paratope/idiotope matrices,
// clone dynamics, concentration-based selection and online reinforcement.
class Repertoire {
public:
    // costs must hold one entry per solution set; throws GenomeError on a
    // degenerate sequence (all reinforcement scores zero).
    static Repertoire build(const GeneticSequence& seq, const ImmuneConfig& cfg,
                            const std::vector<EpisodeCost>& costs);

    // Full selection step for antigen code m (1..8): antigenic antibody,
    // stimulation/suppression, clone update, concentration refresh.
    SelectionReport select(int antigen_code, const ImmuneConfig& cfg);

    // Online reinforcement of the executed behaviour's paratope entry.
    void reinforce(int set, int antigen_code, double reward, const ImmuneConfig& cfg);

    const BehaviourGene& gene(int set, int antigen_code) const {
        return genes_.gene(set, antigen_code - 1);
    }

    int sets() const { return n_; }
    double paratope(int i, int j) const { return p_[idx(i, j)]; }
    double idiotope(int i, int j) const { return i_[idx(i, j)]; }
    double clones(int i, int j) const { return n_clones_[idx(i, j)]; }
    double concentration(int i, int j) const { return c_[idx(i, j)]; }
    double concentration_sum() const;

    // test hooks
    void set_paratope(int i, int j, double v) { p_[idx(i, j)] = v; }
    void set_clones(int i, int j, double v) { n_clones_[idx(i, j)] = v; }
    void refresh_concentrations(const ImmuneConfig& cfg);

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * kAntigenCount + j; }

    int n_ = 0;
    GeneticSequence genes_;
    std::vector<double> p_;         // paratope, (0,1]
    std::vector<double> i_;         // idiotope, one 1.0 per column
    std::vector<double> n_clones_;  // clone counts
    std::vector<double> c_;         // concentrations, sums to phi
};

// Fraction of steps whose concentration-selected set differed from the
// antigenic one; throws std::runtime_error on an empty history.
double difference_rate(std::span<const SelectionReport> history);

}  // namespace aisim
