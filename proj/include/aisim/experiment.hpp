#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "aisim/episode.hpp"
#include "aisim/stats.hpp"

namespace aisim {

struct ExperimentConfig {
    int runs_per_arm = 30;
    std::vector<WorldKind> worlds{WorldKind::maze_markers, WorldKind::block_search};
    double world_scale = 4.0;
    std::uint64_t master_seed = 1;
    int threads = 4;
};

// One paired trial: both arms run the byte-identical world and episode seed.
struct PairResult {
    std::uint64_t world_seed = 0;
    EpisodeResult idiotypic;
    EpisodeResult rl_only;
};

struct ArmSummary {
    Summary time;
    Summary collisions;
    double fail_rate = 0.0;
};

struct WorldComparison {
    WorldKind kind = WorldKind::maze_markers;
    std::vector<PairResult> pairs;
    ArmSummary idiotypic;
    ArmSummary rl_only;
    double p_time = 1.0;
    double p_collisions = 1.0;
    // A-value orientation: probability that an RL-only sample exceeds an
    // idiotypic one, so values above 0.5 favour the idiotypic arm.
    double a_time = 0.5;
    double a_collisions = 0.5;
};

struct ComparisonReport {
    std::vector<WorldComparison> worlds;
};

// Paired batch: per pair a fresh world seed, one idiotypic and one RL-only
// episode on identical worlds; pairs run in parallel but deterministically.
// set_costs are the per-set costs recorded when the sequence was evolved;
// without them each world kind runs one calibration episode per set instead.
ComparisonReport run_experiment(const GeneticSequence& seq, const PlatformProfile& profile,
                                const PlatformProfile& epuck_ref, const ImmuneConfig& icfg,
                                const EpisodeConfig& ecfg, const ExperimentConfig& xcfg,
                                bool same_mode_both_arms = false,
                                const std::vector<EpisodeCost>* set_costs = nullptr);

// Recompute the per-world statistics from the stored pair results.
void compute_statistics(WorldComparison& wc);

void write_episode_csv(std::ostream& out, const ComparisonReport& report);
ComparisonReport read_episode_csv(std::istream& in);

void write_report_csv(std::ostream& out, const ComparisonReport& report);
void write_report_text(std::ostream& out, const ComparisonReport& report);

}  // namespace aisim
