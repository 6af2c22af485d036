#include "aisim/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace aisim {

std::vector<double> relative_fitness(const std::vector<double>& times,
                                     const std::vector<int>& collisions, double rho) {
    std::vector<double> inv(times.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        inv[i] = 1.0 / (times[i] + rho * collisions[i]);
        sum += inv[i];
    }
    for (double& v : inv) v /= sum;
    return inv;
}

int roulette_pick(const std::vector<double>& fitness, double u) {
    double cum = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        cum += fitness[i];
        if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(fitness.size()) - 1;  // u landed on accumulated rounding
}

std::pair<int, int> select_parents(const std::vector<double>& fitness, Rng& rng) {
    if (fitness.size() < 2) throw std::runtime_error("select_parents needs a population >= 2");
    const int first = roulette_pick(fitness, rng.uniform(0.0, 1.0));

    std::vector<double> rest(fitness);
    rest[first] = 0.0;
    double sum = 0.0;
    for (double v : rest) sum += v;
    for (double& v : rest) v /= sum;
    const int second = roulette_pick(rest, rng.uniform(0.0, 1.0));
    return {first, second};
}

namespace {

int clamp_attr(double v, int lo, int hi) {
    return std::clamp(static_cast<int>(std::llround(v)), lo, hi);
}

}  // namespace

BehaviourGene cross_genes(const BehaviourGene& a, const BehaviourGene& b, CrossoverMode mode,
                          Rng& rng, const GeneLimits& limits) {
    BehaviourGene child;
    child.antigen_index = a.antigen_index;
    child.type = a.type;

    switch (mode) {
        case CrossoverMode::average:
            child.speed = clamp_attr((a.speed + b.speed) / 2.0, limits.speed_min, limits.speed_max);
            child.turn_frequency = clamp_attr((a.turn_frequency + b.turn_frequency) / 2.0, 0, 100);
            child.turn_angle = clamp_attr((a.turn_angle + b.turn_angle) / 2.0, 0, 100);
            child.direction = clamp_attr((a.direction + b.direction) / 2.0, 1, 2);
            child.right_turn_frequency =
                clamp_attr((a.right_turn_frequency + b.right_turn_frequency) / 2.0, 0, 100);
            child.right_turn_angle =
                clamp_attr((a.right_turn_angle + b.right_turn_angle) / 2.0, 0, 100);
            break;
        case CrossoverMode::random_pick:
            child.speed = rng.chance(0.5) ? a.speed : b.speed;
            child.turn_frequency = rng.chance(0.5) ? a.turn_frequency : b.turn_frequency;
            child.turn_angle = rng.chance(0.5) ? a.turn_angle : b.turn_angle;
            child.direction = rng.chance(0.5) ? a.direction : b.direction;
            child.right_turn_frequency =
                rng.chance(0.5) ? a.right_turn_frequency : b.right_turn_frequency;
            child.right_turn_angle = rng.chance(0.5) ? a.right_turn_angle : b.right_turn_angle;
            break;
        case CrossoverMode::pattern: {
            // fixed alternating split: S, A, Rf from one parent; F, D, Ra from the other
            const BehaviourGene& p = rng.chance(0.5) ? a : b;
            const BehaviourGene& q = (&p == &a) ? b : a;
            child.speed = p.speed;
            child.turn_angle = p.turn_angle;
            child.right_turn_frequency = p.right_turn_frequency;
            child.turn_frequency = q.turn_frequency;
            child.direction = q.direction;
            child.right_turn_angle = q.right_turn_angle;
            break;
        }
    }
    child.score = 0;
    return child;
}

void mutate_attribute(BehaviourGene& g, Rng& rng, const GeneLimits& limits) {
    const int attr = rng.uniform_int(0, 5);
    const double factor = 1.0 + (rng.chance(0.5) ? 1.0 : -1.0) * rng.uniform(0.2, 0.5);
    switch (attr) {
        case 0: g.speed = clamp_attr(g.speed * factor, limits.speed_min, limits.speed_max); break;
        case 1: g.turn_frequency = clamp_attr(g.turn_frequency * factor, 0, 100); break;
        case 2: g.turn_angle = clamp_attr(g.turn_angle * factor, 0, 100); break;
        case 3: g.direction = clamp_attr(g.direction * factor, 1, 2); break;
        case 4: g.right_turn_frequency = clamp_attr(g.right_turn_frequency * factor, 0, 100); break;
        case 5: g.right_turn_angle = clamp_attr(g.right_turn_angle * factor, 0, 100); break;
    }
}

std::array<BehaviourGene, kAntigenCount> crossover(const Individual& a, const Individual& b,
                                                   const GaConfig& cfg, Rng& rng) {
    std::array<BehaviourGene, kAntigenCount> child;
    for (int j = 0; j < kAntigenCount; ++j) {
        if (rng.chance(cfg.replacement_rate)) {
            child[j] = random_gene(j, rng, cfg.limits);
            continue;
        }
        if (a.genes[j].type != b.genes[j].type) {
            child[j] = rng.chance(0.5) ? a.genes[j] : b.genes[j];
        } else {
            const auto mode = static_cast<CrossoverMode>(rng.uniform_int(0, 2));
            child[j] = cross_genes(a.genes[j], b.genes[j], mode, rng, cfg.limits);
        }
        if (rng.chance(cfg.mutation_rate)) mutate_attribute(child[j], rng, cfg.limits);
    }
    return child;
}

namespace {

struct EvaluatedIndividual {
    double time = 0.0;
    int collisions = 0;
};

struct PopulationOutcome {
    Individual best;
    double best_time = 0.0;
    int best_collisions = 0;
};

PopulationOutcome evolve_population(int pop_index, const GaConfig& cfg,
                                    const EpisodeConfig& ecfg, WorldKind kind,
                                    double world_scale, const PlatformProfile& profile,
                                    const PlatformProfile& epuck_ref, std::uint64_t master_seed,
                                    std::ostream* log) {
    Rng rng = Rng(master_seed).derive(100 + pop_index);
    // A fixed evaluation suite shared by every population: the same individual
    // always scores the same cost, which keeps elitism and convergence
    // meaningful, the final best-of-population costs stay comparable across
    // the never-interbreeding populations, and averaging over several worlds
    // selects for behaviours that generalize past a single layout.
    const std::uint64_t episode_seed = mix64(master_seed ^ mix64(9000));
    std::vector<World> worlds;
    for (int w = 0; w < std::max(1, cfg.eval_worlds); ++w) {
        worlds.push_back(generate_world(kind, mix64(master_seed ^ mix64(7000 + w)), world_scale));
    }

    std::vector<Individual> pop(cfg.population);
    for (int i = 0; i < cfg.population; ++i) {
        pop[i].population_tag = pop_index;
        for (int j = 0; j < kAntigenCount; ++j) pop[i].genes[j] = random_gene(j, rng, cfg.limits);
    }

    std::vector<EvaluatedIndividual> eval(cfg.population);
    std::vector<double> best_history;

    auto evaluate = [&]() {
        double inv_sum = 0.0;
        for (int i = 0; i < cfg.population; ++i) {
            double time_sum = 0.0, collision_sum = 0.0;
            std::array<double, kAntigenCount> scores{};
            for (const World& world : worlds) {
                const DirectEpisodeOutcome out = run_direct_episode(world, profile, epuck_ref,
                                                                    pop[i].genes, ecfg,
                                                                    episode_seed);
                time_sum += out.time;
                collision_sum += out.collisions;
                for (int j = 0; j < kAntigenCount; ++j) scores[j] += out.mean_scores[j];
            }
            const double w = static_cast<double>(worlds.size());
            eval[i] = {time_sum / w, static_cast<int>(std::llround(collision_sum / w))};
            pop[i].cost = (time_sum + cfg.cost_weight * collision_sum) / w;
            inv_sum += 1.0 / pop[i].cost;
            for (int j = 0; j < kAntigenCount; ++j) {
                pop[i].mean_scores[j] = scores[j] / w;
                if (pop[i].mean_scores[j] < cfg.low_score_floor) {
                    ++pop[i].low_streaks[j];
                } else {
                    pop[i].low_streaks[j] = 0;
                }
            }
        }
        for (int i = 0; i < cfg.population; ++i) {
            pop[i].fitness = (1.0 / pop[i].cost) / inv_sum;
        }
    };

    int best_index = 0;
    for (int gen = 0; gen < cfg.max_generations; ++gen) {
        evaluate();

        best_index = 0;
        double mean_cost = 0.0;
        for (int i = 0; i < cfg.population; ++i) {
            if (pop[i].cost < pop[best_index].cost) best_index = i;
            mean_cost += pop[i].cost;
        }
        mean_cost /= cfg.population;
        best_history.push_back(pop[best_index].cost);
        if (log) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "%d,%d,%.3f,%.3f\n", pop_index, gen,
                          pop[best_index].cost, mean_cost);
            *log << buf;
        }

        const int w = cfg.convergence_window;
        if (static_cast<int>(best_history.size()) > w) {
            const double before = best_history[best_history.size() - 1 - w];
            const double now = best_history.back();
            if ((before - now) / before < cfg.convergence_eps) break;
        }
        if (gen == cfg.max_generations - 1) break;

        // next generation: elite carried unchanged, the rest bred by roulette
        std::vector<double> fitness(cfg.population);
        for (int i = 0; i < cfg.population; ++i) fitness[i] = pop[i].fitness;

        std::vector<Individual> next(cfg.population);
        next[0] = pop[best_index];
        for (int i = 1; i < cfg.population; ++i) {
            const auto [pa, pb] = select_parents(fitness, rng);
            if (pop[pa].population_tag != pop_index || pop[pb].population_tag != pop_index) {
                throw std::runtime_error("populations must never interbreed");
            }
            Individual child;
            child.population_tag = pop_index;
            child.genes = crossover(pop[pa], pop[pb], cfg, rng);
            for (int j = 0; j < kAntigenCount; ++j) {
                // verbatim inheritance keeps the RL low-score streak alive
                if (child.genes[j] == pop[pa].genes[j]) {
                    child.low_streaks[j] = pop[pa].low_streaks[j];
                } else if (child.genes[j] == pop[pb].genes[j]) {
                    child.low_streaks[j] = pop[pb].low_streaks[j];
                }
            }
            next[i] = std::move(child);
        }

        // RL assist: persistently low-scoring genes are swapped for fresh ones
        // (the elite copy stays untouched)
        for (int i = 1; i < cfg.population; ++i) {
            for (int j = 0; j < kAntigenCount; ++j) {
                if (next[i].low_streaks[j] >= cfg.low_score_streak) {
                    next[i].genes[j] = random_gene(j, rng, cfg.limits);
                    next[i].low_streaks[j] = 0;
                }
            }
        }
        pop = std::move(next);
    }

    PopulationOutcome out;
    out.best = pop[best_index];
    out.best_time = eval[best_index].time;
    out.best_collisions = eval[best_index].collisions;
    return out;
}

}  // namespace

EvolveOutcome evolve(const GaConfig& cfg, const EpisodeConfig& ecfg, WorldKind kind,
                     double world_scale, const PlatformProfile& profile,
                     const PlatformProfile& epuck_ref, std::uint64_t master_seed,
                     std::ostream* generation_log) {
    if (cfg.population < 2) throw std::runtime_error("population must be >= 2");
    if (generation_log) *generation_log << "population,generation,best_cost,mean_cost\n";

    EvolveOutcome out;
    out.sequence.sets = cfg.populations;
    for (int p = 0; p < cfg.populations; ++p) {
        const PopulationOutcome best = evolve_population(p, cfg, ecfg, kind, world_scale, profile,
                                                         epuck_ref, master_seed, generation_log);
        for (int j = 0; j < kAntigenCount; ++j) {
            BehaviourGene g = best.best.genes[j];
            g.score = std::clamp(static_cast<int>(std::llround(best.best.mean_scores[j] * 100.0)),
                                 0, 100);
            out.sequence.genes.push_back(g);
        }
        out.costs.push_back({best.best_time, best.best_collisions});
    }
    return out;
}

}  // namespace aisim
