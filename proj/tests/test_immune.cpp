#include <vector>

#include "aisim/immune.hpp"
#include "aisim/rng.hpp"
#include "doctest.h"

using namespace aisim;

namespace {

GeneticSequence make_sequence(const std::vector<int>& set_scores) {
    Rng rng(31337);
    GeneticSequence seq;
    seq.sets = static_cast<int>(set_scores.size());
    for (int s = 0; s < seq.sets; ++s) {
        for (int j = 0; j < kAntigenCount; ++j) {
            BehaviourGene g = random_gene(j, rng, {});
            g.score = set_scores[s];
            seq.genes.push_back(g);
        }
    }
    return seq;
}

}  // namespace

TEST_CASE("build weights paratopes by score and episode cost") {
    const GeneticSequence seq = make_sequence({80, 40});
    const ImmuneConfig cfg;

    SUBCASE("equal costs leave only the score ratio") {
        const std::vector<EpisodeCost> costs{{100.0, 0}, {100.0, 0}};
        const Repertoire rep = Repertoire::build(seq, cfg, costs);
        for (int j = 0; j < kAntigenCount; ++j) {
            CHECK(rep.paratope(0, j) == doctest::Approx(1.0));
            CHECK(rep.paratope(1, j) == doctest::Approx(0.5));
        }
    }

    SUBCASE("a costlier set is scaled down by its relative fitness") {
        // inverse costs 1/100 and 1/200 give relative fitness 2/3 and 1/3,
        // so the second row is halved again
        const std::vector<EpisodeCost> costs{{100.0, 0}, {200.0, 0}};
        const Repertoire rep = Repertoire::build(seq, cfg, costs);
        CHECK(rep.paratope(0, 0) == doctest::Approx(1.0));
        CHECK(rep.paratope(1, 0) == doctest::Approx(0.25));
    }

    SUBCASE("collision cost enters through its weight") {
        const std::vector<EpisodeCost> costs{{100.0, 0}, {84.0, 2}};  // 84 + 8*2 = 100
        const Repertoire rep = Repertoire::build(seq, cfg, costs);
        CHECK(rep.paratope(1, 0) == doctest::Approx(0.5));
    }
}

TEST_CASE("build marks the weakest paratope per antigen as the idiotope") {
    const GeneticSequence seq = make_sequence({80, 40, 60});
    const std::vector<EpisodeCost> costs{{100.0, 0}, {100.0, 0}, {100.0, 0}};
    const Repertoire rep = Repertoire::build(seq, ImmuneConfig{}, costs);
    for (int j = 0; j < kAntigenCount; ++j) {
        double ones = 0.0;
        for (int i = 0; i < 3; ++i) ones += rep.idiotope(i, j);
        CHECK(ones == 1.0);
        CHECK(rep.idiotope(1, j) == 1.0);  // lowest-scoring set
    }
}

TEST_CASE("build rejects degenerate input") {
    CHECK_THROWS_AS(Repertoire::build(make_sequence({0, 0}), ImmuneConfig{},
                                      {{100.0, 0}, {100.0, 0}}),
                    GenomeError);
    CHECK_THROWS_AS(Repertoire::build(make_sequence({80, 40}), ImmuneConfig{}, {{100.0, 0}}),
                    GenomeError);
}

TEST_CASE("initial concentrations are uniform and sum to the scale constant") {
    const GeneticSequence seq = make_sequence({80, 40, 60, 20, 50});
    const std::vector<EpisodeCost> costs(5, EpisodeCost{100.0, 0});
    const Repertoire rep = Repertoire::build(seq, ImmuneConfig{}, costs);
    CHECK(rep.concentration_sum() == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(rep.concentration(2, 3) == doctest::Approx(25.0 / 40.0).epsilon(1e-12));
}

TEST_CASE("concentration sum is invariant under network dynamics") {
    const GeneticSequence seq = make_sequence({80, 40, 60, 20, 50});
    const std::vector<EpisodeCost> costs(5, EpisodeCost{100.0, 0});
    const ImmuneConfig cfg;
    Repertoire rep = Repertoire::build(seq, cfg, costs);
    Rng rng(404);
    for (int t = 0; t < 10000; ++t) {
        rep.select(rng.uniform_int(1, 8), cfg);
        CHECK(rep.concentration_sum() == doctest::Approx(25.0).epsilon(1e-9));
    }
}

TEST_CASE("disabled network selection is a pure paratope argmax with no side effects") {
    const GeneticSequence seq = make_sequence({80, 40, 60});
    const std::vector<EpisodeCost> costs(3, EpisodeCost{100.0, 0});
    ImmuneConfig cfg;
    cfg.idiotypic_enabled = false;
    Repertoire rep = Repertoire::build(seq, cfg, costs);

    Rng rng(77);
    for (int t = 0; t < 1000; ++t) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < kAntigenCount; ++j) {
                rep.set_paratope(i, j, rng.uniform(0.01, 1.0));
            }
        }
        const int antigen = rng.uniform_int(1, 8);
        int expect = 0;
        for (int i = 1; i < 3; ++i) {
            if (rep.paratope(i, antigen - 1) > rep.paratope(expect, antigen - 1)) expect = i;
        }
        const double clones_before = rep.clones(0, antigen - 1);
        const SelectionReport r = rep.select(antigen, cfg);
        CHECK(r.selected_set == expect);
        CHECK(r.antigenic_set == expect);
        CHECK_FALSE(r.differed);
        CHECK(r.alpha == 0.0);
        CHECK(r.delta == 0.0);
        CHECK(rep.clones(0, antigen - 1) == clones_before);
    }
}

TEST_CASE("stimulation and suppression match the hand-worked two-set network") {
    // Two sets, scores 80 and 40, equal costs: paratope rows 1.0 and 0.5, the
    // idiotope sits entirely on row 1. Overriding two entries makes row 1 the
    // antigenic antibody for antigen 1 so the network terms become non-trivial.
    const GeneticSequence seq = make_sequence({80, 40});
    const std::vector<EpisodeCost> costs{{100.0, 0}, {100.0, 0}};
    const ImmuneConfig cfg;
    Repertoire rep = Repertoire::build(seq, cfg, costs);
    rep.set_paratope(0, 0, 0.4);
    rep.set_paratope(1, 0, 0.9);
    // 16 entries at the initial 1000 clones: every concentration is 25/16
    const double c = 25.0 / 16.0;

    const SelectionReport r = rep.select(1, cfg);
    CHECK(r.antigenic_set == 1);

    // the antigenic idiotope covers every column, so row 0's terms sum over
    // its whole paratope: alpha = g*k1/8 * (1 - 0.4) * c^2 and
    // delta = g*k2/8 * (0.4 + 7 * 1.0) * c^2
    const double alpha0 = cfg.network_gain * 0.30 / 8.0 * 0.6 * c * c;
    const double delta0 = cfg.network_gain * 1.85 / 8.0 * 7.4 * c * c;
    // suppression dominates both rows, their adjusted affinities floor at
    // 0.01, the clone race ties and the tie-break flips selection to row 0
    CHECK(r.selected_set == 0);
    CHECK(r.differed);
    CHECK(r.alpha == doctest::Approx(alpha0).epsilon(1e-12));
    CHECK(r.delta == doctest::Approx(delta0).epsilon(1e-12));

    // the adjustment is transient: the stored paratopes are untouched
    CHECK(rep.paratope(0, 0) == doctest::Approx(0.4));
    CHECK(rep.paratope(1, 0) == doctest::Approx(0.9));
    // Farmer-style clone update on the floored adjusted affinities
    CHECK(rep.clones(0, 0) == doctest::Approx(200.0 * 0.01 + 1000.0).epsilon(1e-12));
    CHECK(rep.clones(1, 0) == doctest::Approx(200.0 * 0.01 + 1000.0).epsilon(1e-12));
    CHECK(rep.concentration_sum() == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("clone update honours the death-rate constant") {
    const GeneticSequence seq = make_sequence({80, 40});
    const std::vector<EpisodeCost> costs{{100.0, 0}, {100.0, 0}};
    ImmuneConfig cfg;
    cfg.k3 = 0.1;
    Repertoire rep = Repertoire::build(seq, cfg, costs);
    rep.select(3, cfg);
    // antigenic row 0 carries no idiotope entries, so both network terms
    // vanish and the clone update sees the raw paratopes: N' = 200*P + N*0.9
    CHECK(rep.paratope(0, 2) == doctest::Approx(1.0));
    CHECK(rep.paratope(1, 2) == doctest::Approx(0.5));
    CHECK(rep.clones(0, 2) == doctest::Approx(200.0 * 1.0 + 900.0).epsilon(1e-12));
    CHECK(rep.clones(1, 2) == doctest::Approx(200.0 * 0.5 + 900.0).epsilon(1e-12));
}

TEST_CASE("reinforcement nudges the paratope towards the reward") {
    const GeneticSequence seq = make_sequence({80, 40});
    const std::vector<EpisodeCost> costs{{100.0, 0}, {100.0, 0}};
    ImmuneConfig cfg;
    cfg.learning_rate = 0.1;
    Repertoire rep = Repertoire::build(seq, cfg, costs);

    rep.reinforce(1, 1, 1.0, cfg);  // P = 0.5 + 0.1 * (1.0 - 0.5)
    CHECK(rep.paratope(1, 0) == doctest::Approx(0.55).epsilon(1e-12));
    for (int t = 0; t < 2000; ++t) rep.reinforce(1, 1, 0.0, cfg);
    CHECK(rep.paratope(1, 0) == doctest::Approx(0.01));  // floored, never zero
}

TEST_CASE("difference_rate counts disagreeing selections") {
    std::vector<SelectionReport> h(4);
    h[1].differed = true;
    h[3].differed = true;
    CHECK(difference_rate(h) == doctest::Approx(0.5));
    CHECK_THROWS(difference_rate(std::span<const SelectionReport>{}));
}
