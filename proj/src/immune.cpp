#include "aisim/immune.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aisim {

namespace {

// Eq-1 style relative fitness: normalized inverse of (t + rho*c).
std::vector<double> relative_set_fitness(const std::vector<EpisodeCost>& costs, double rho) {
    std::vector<double> inv(costs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        inv[i] = 1.0 / (costs[i].time + rho * costs[i].collisions);
        sum += inv[i];
    }
    for (double& v : inv) v /= sum;
    return inv;
}

}  // namespace

Repertoire Repertoire::build(const GeneticSequence& seq, const ImmuneConfig& cfg,
                             const std::vector<EpisodeCost>& costs) {
    if (seq.sets < 1) throw GenomeError("empty genetic sequence");
    if (static_cast<int>(costs.size()) != seq.sets) {
        throw GenomeError("need one episode cost per solution set");
    }

    Repertoire rep;
    rep.n_ = seq.sets;
    rep.genes_ = seq;
    const std::size_t total = static_cast<std::size_t>(rep.n_) * kAntigenCount;
    rep.p_.resize(total);
    rep.i_.assign(total, 0.0);
    rep.n_clones_.assign(total, cfg.initial_clones);
    rep.c_.resize(total);

    int max_score = 0;
    for (const BehaviourGene& g : seq.genes) max_score = std::max(max_score, g.score);
    if (max_score <= 0) throw GenomeError("degenerate sequence: all reinforcement scores zero");

    const std::vector<double> mu = relative_set_fitness(costs, cfg.rho_stl);
    const double mu_max = *std::max_element(mu.begin(), mu.end());

    for (int i = 0; i < rep.n_; ++i) {
        for (int j = 0; j < kAntigenCount; ++j) {
            const double raw = seq.gene(i, j).score / static_cast<double>(max_score);
            const double scaled = std::max(raw, cfg.paratope_floor) * (mu[i] / mu_max);
            rep.p_[rep.idx(i, j)] = std::clamp(scaled, cfg.paratope_floor, 1.0);
        }
    }

    // idiotope: mark the weakest paratope per antigen (ties -> lowest set)
    for (int j = 0; j < kAntigenCount; ++j) {
        int weakest = 0;
        for (int i = 1; i < rep.n_; ++i) {
            if (rep.p_[rep.idx(i, j)] < rep.p_[rep.idx(weakest, j)]) weakest = i;
        }
        rep.i_[rep.idx(weakest, j)] = 1.0;
    }

    rep.refresh_concentrations(cfg);
    return rep;
}

void Repertoire::refresh_concentrations(const ImmuneConfig& cfg) {
    double total = 0.0;
    for (double v : n_clones_) total += v;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        c_[k] = cfg.concentration_scale * n_clones_[k] / total;
    }
}

double Repertoire::concentration_sum() const {
    double s = 0.0;
    for (double v : c_) s += v;
    return s;
}

SelectionReport Repertoire::select(int antigen_code, const ImmuneConfig& cfg) {
    const int m = antigen_code - 1;
    SelectionReport report;
    report.antigen = antigen_code;

    // antigenic antibody: strongest paratope for m, ties -> lowest set
    int l = 0;
    for (int i = 1; i < n_; ++i) {
        if (p_[idx(i, m)] > p_[idx(l, m)]) l = i;
    }
    report.antigenic_set = l;

    if (!cfg.idiotypic_enabled) {
        report.selected_set = l;
        report.differed = false;
        return report;
    }

    // Stimulation compares the antigenic antibody's idiotope against every
    // paratope row; suppression compares the antigenic paratope against each
    // row's own idiotope. Both are weighted by the concentrations of the two
    // antibodies involved.
    const double y = kAntigenCount;
    std::vector<double> alpha(n_, 0.0), delta(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double a = 0.0, d = 0.0;
        for (int j = 0; j < kAntigenCount; ++j) {
            const double cc = c_[idx(l, j)] * c_[idx(i, j)];
            a += (1.0 - p_[idx(i, j)]) * i_[idx(l, j)] * cc;
            d += p_[idx(i, j)] * i_[idx(l, j)] * cc;
        }
        alpha[i] = cfg.network_gain * cfg.k1 * a / y;
        delta[i] = cfg.network_gain * cfg.k2 * d / y;
    }

    // The adjusted affinity feeds the clone race only; the paratope itself
    // changes through reinforcement alone, with the idiotope fixed throughout.
    for (int i = 0; i < n_; ++i) {
        const double adjusted =
            std::clamp(p_[idx(i, m)] + alpha[i] - delta[i], cfg.paratope_floor, 1.0);
        n_clones_[idx(i, m)] = cfg.clone_scale * adjusted + n_clones_[idx(i, m)] * (1.0 - cfg.k3);
    }
    refresh_concentrations(cfg);

    int sel = 0;
    for (int i = 1; i < n_; ++i) {
        if (c_[idx(i, m)] > c_[idx(sel, m)]) sel = i;
    }
    report.selected_set = sel;
    report.alpha = alpha[sel];
    report.delta = delta[sel];
    report.differed = sel != l;
    return report;
}

void Repertoire::reinforce(int set, int antigen_code, double reward, const ImmuneConfig& cfg) {
    const std::size_t k = idx(set, antigen_code - 1);
    const double updated = p_[k] + cfg.learning_rate * (reward - p_[k]);
    p_[k] = std::clamp(updated, cfg.paratope_floor, 1.0);
}

double difference_rate(std::span<const SelectionReport> history) {
    if (history.empty()) throw std::runtime_error("difference_rate: empty history");
    std::size_t differed = 0;
    for (const SelectionReport& r : history) differed += r.differed ? 1 : 0;
    return static_cast<double>(differed) / static_cast<double>(history.size());
}

}  // namespace aisim
