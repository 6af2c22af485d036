#pragma once

#include <array>
#include <cstdint>
#include <ostream>

#include "aisim/behaviour.hpp"
#include "aisim/immune.hpp"
#include "aisim/world.hpp"

namespace aisim {

struct EpisodeConfig {
    double dt = 0.1;             // simulated seconds per control tick
    double time_cap = 900.0;     // failure cap
    int score_window_cap = 20;   // ticks; scoring window also closes on antigen change
    int dwell_ticks = 5;         // behaviour phase length
    ScoreWeights score_weights{};
    SenseConfig sense{};
};

struct EpisodeResult {
    double time = 0.0;
    int collisions = 0;         // ticks presenting antigen 6/7/8 (simulator convention)
    int physical_contacts = 0;  // ticks with body-segment contact, recorded separately
    bool failed = false;
    double mean_diff_rate = 0.0;
    std::uint64_t seed = 0;
};

// One STL episode: sense -> classify -> score/reinforce -> immune select ->
// execute -> integrate, until the goal is reached or the time cap expires.
// The optional trace stream receives one CSV row per tick.
EpisodeResult run_episode(World world, const PlatformProfile& profile,
                          const PlatformProfile& epuck_ref, Repertoire& rep,
                          const ImmuneConfig& icfg, const EpisodeConfig& cfg,
                          std::uint64_t seed, std::ostream* trace = nullptr);

struct DirectEpisodeOutcome {
    double time = 0.0;
    int collisions = 0;
    bool failed = false;
    std::array<double, kAntigenCount> mean_scores{};  // running mean RL score per gene
};

// LTL-style episode: a single behaviour set mapped directly antigen -> gene,
// with reinforcement scores tracked per gene. Used for GA evaluation and for
// calibrating solution-set costs.
DirectEpisodeOutcome run_direct_episode(World world, const PlatformProfile& profile,
                                        const PlatformProfile& epuck_ref,
                                        const std::array<BehaviourGene, kAntigenCount>& genes,
                                        const EpisodeConfig& cfg, std::uint64_t seed);

// One calibration episode per solution set, measuring (t, c) for repertoire
// weighting when a sequence file carries no cost provenance.
std::vector<EpisodeCost> calibrate_costs(const GeneticSequence& seq, const World& world,
                                         const PlatformProfile& profile,
                                         const PlatformProfile& epuck_ref,
                                         const EpisodeConfig& cfg, std::uint64_t seed);

}  // namespace aisim
