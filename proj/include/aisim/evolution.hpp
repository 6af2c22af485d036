#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "aisim/episode.hpp"
#include "aisim/genome.hpp"
#include "aisim/immune.hpp"
#include "aisim/world.hpp"

namespace aisim {

struct GaConfig {
    int population = 10;               // chi
    int populations = 5;               // n, independent and never interbreeding
    double replacement_rate = 0.05;    // psi, whole-antibody replacement
    double mutation_rate = 0.05;       // gamma, single-attribute perturbation
    double cost_weight = 1.0;          // rho in the fitness cost t + rho*c
    int max_generations = 12;
    int convergence_window = 3;
    double convergence_eps = 0.01;     // best-cost relative improvement threshold
    double low_score_floor = 0.2;      // RL assist: genes stuck below this ...
    int low_score_streak = 3;          // ... for this many episodes are replaced
    int eval_worlds = 3;               // fixed worlds per evaluation; cost is their mean
    GeneLimits limits{};
};

struct Individual {
    std::array<BehaviourGene, kAntigenCount> genes{};
    double cost = 0.0;     // t + rho*c of the last evaluation
    double fitness = 0.0;  // normalized inverse cost, sums to 1 over the population
    std::array<double, kAntigenCount> mean_scores{};
    std::array<int, kAntigenCount> low_streaks{};
    int population_tag = -1;  // provenance; populations never exchange members
};

// Normalized inverse-cost relative fitness over (t_i, c_i).
std::vector<double> relative_fitness(const std::vector<double>& times,
                                     const std::vector<int>& collisions, double rho);

// Roulette-wheel pick given cumulative-normalized fitness and a uniform draw.
int roulette_pick(const std::vector<double>& fitness, double u);

// Two distinct parents; the second draw excludes the first and renormalizes.
std::pair<int, int> select_parents(const std::vector<double>& fitness, Rng& rng);

enum class CrossoverMode { average, random_pick, pattern };

// Same-type crossover of one antigen slot under an explicit mode.
BehaviourGene cross_genes(const BehaviourGene& a, const BehaviourGene& b, CrossoverMode mode,
                          Rng& rng, const GeneLimits& limits);

// Perturb one uniformly chosen attribute by +/-20..50% of its value, clamped.
void mutate_attribute(BehaviourGene& g, Rng& rng, const GeneLimits& limits);

// Full child construction: per-slot replacement, type-aware crossover, mutation.
std::array<BehaviourGene, kAntigenCount> crossover(const Individual& a, const Individual& b,
                                                   const GaConfig& cfg, Rng& rng);

struct EvolveOutcome {
    GeneticSequence sequence;        // n sets, fittest individual per population
    std::vector<EpisodeCost> costs;  // final evaluation cost of each contributing set
};

// The LTL phase: n independent populations evolved with generational
// replacement, elitism of one and RL-assisted gene replacement. The optional
// log receives one CSV row per (population, generation).
EvolveOutcome evolve(const GaConfig& cfg, const EpisodeConfig& ecfg, WorldKind kind,
                     double world_scale, const PlatformProfile& profile,
                     const PlatformProfile& epuck_ref, std::uint64_t master_seed,
                     std::ostream* generation_log = nullptr);

}  // namespace aisim
