#include "aisim/episode.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include "aisim/perception.hpp"

namespace aisim {

namespace {

struct LoopOutcome {
    double time = 0.0;
    int collisions = 0;
    int contacts = 0;
    bool failed = false;
};

// Shared control loop; behaviour selection and learning are injected so the
// immune (STL) and direct-mapped (LTL) episodes run byte-identical physics.
template <class SelectFn, class GeneFn, class LearnFn, class TraceFn>
LoopOutcome control_loop(World& world, const PlatformProfile& profile,
                         const PlatformProfile& epuck_ref, const EpisodeConfig& cfg,
                         std::uint64_t seed, SelectFn&& select, GeneFn&& gene_of,
                         LearnFn&& learn, TraceFn&& trace) {
    LoopOutcome out;
    if (goal_reached(world, profile.body_radius)) return out;  // degenerate task

    Rng rng(seed);
    const int max_ticks = static_cast<int>(std::llround(cfg.time_cap / cfg.dt));

    int window_antigen = -1;
    int window_set = -1;
    int window_ticks = 0;
    bool window_contact = false;
    double window_start_dist = 0.0;

    std::optional<BehaviourRuntime> runtime;
    int rt_set = -1, rt_antigen = -1;
    bool goal = false;

    for (int tick = 0; tick < max_ticks; ++tick) {
        const SensorFrame frame = sense(world, profile, cfg.sense);
        const int antigen = classify(frame, profile);

        if (window_antigen < 0) {
            window_antigen = antigen;
            window_start_dist = goal_distance(world);
        } else if (antigen != window_antigen || window_ticks >= cfg.score_window_cap) {
            const double progress = window_start_dist - goal_distance(world);
            const double r = score_behaviour(window_antigen, antigen, window_contact, progress,
                                             cfg.score_weights);
            if (window_set >= 0) learn(window_set, window_antigen, r);
            window_antigen = antigen;
            window_ticks = 0;
            window_contact = false;
            window_start_dist = goal_distance(world);
        }

        const int selected = select(antigen);
        window_set = selected;
        if (!runtime || rt_set != selected || rt_antigen != antigen) {
            runtime.emplace(gene_of(selected, antigen), rng.derive(1000 + tick),
                            cfg.dwell_ticks);
            rt_set = selected;
            rt_antigen = antigen;
        }

        const WheelCommand cmd = runtime->tick(blob_direction(frame));
        const BodyVelocity vel = profile.steering == SteeringInterface::velocity_yaw
                                     ? to_body_velocity(cmd, profile, epuck_ref)
                                     : epuck_direct_drive(cmd, profile);
        step(world, vel, cfg.dt, profile.body_radius);

        if (antigen >= 6) ++out.collisions;
        if (world.contact) {
            ++out.contacts;
            window_contact = true;
        }
        ++window_ticks;
        trace(tick, antigen, selected);

        clear_passed_markers(world, profile.body_radius);

        if (goal_reached(world, profile.body_radius)) {
            goal = true;
            break;
        }
    }

    out.time = world.clock;
    out.failed = !goal;
    if (out.failed) out.time = cfg.time_cap;
    return out;
}

}  // namespace

EpisodeResult run_episode(World world, const PlatformProfile& profile,
                          const PlatformProfile& epuck_ref, Repertoire& rep,
                          const ImmuneConfig& icfg, const EpisodeConfig& cfg,
                          std::uint64_t seed, std::ostream* trace) {
    std::vector<SelectionReport> reports;
    if (trace) {
        *trace << "tick,x,y,theta,antigen,antigenic_set,selected_set,alpha,delta,"
                  "diff_rate_running\n";
    }
    std::size_t differed = 0;

    auto select = [&](int antigen) {
        const SelectionReport r = rep.select(antigen, icfg);
        reports.push_back(r);
        if (r.differed) ++differed;
        return r.selected_set;
    };
    auto gene_of = [&](int set, int antigen) -> const BehaviourGene& {
        return rep.gene(set, antigen);
    };
    auto learn = [&](int set, int antigen, double r) { rep.reinforce(set, antigen, r, icfg); };
    auto write_trace = [&](int tick, int antigen, int selected) {
        if (!trace) return;
        const SelectionReport& r = reports.back();
        char buf[240];
        std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,%d,%d,%d,%.9f,%.9f,%.6f\n", tick,
                      world.robot.x, world.robot.y, world.robot.theta, antigen, r.antigenic_set,
                      selected, r.alpha, r.delta,
                      static_cast<double>(differed) / static_cast<double>(reports.size()));
        *trace << buf;
    };

    const LoopOutcome out =
        control_loop(world, profile, epuck_ref, cfg, seed, select, gene_of, learn, write_trace);

    EpisodeResult result;
    result.time = out.time;
    result.collisions = out.collisions;
    result.physical_contacts = out.contacts;
    result.failed = out.failed;
    result.mean_diff_rate = reports.empty() ? 0.0 : difference_rate(reports);
    result.seed = seed;
    return result;
}

DirectEpisodeOutcome run_direct_episode(World world, const PlatformProfile& profile,
                                        const PlatformProfile& epuck_ref,
                                        const std::array<BehaviourGene, kAntigenCount>& genes,
                                        const EpisodeConfig& cfg, std::uint64_t seed) {
    std::array<double, kAntigenCount> score_sum{};
    std::array<int, kAntigenCount> score_count{};

    auto select = [](int) { return 0; };
    auto gene_of = [&](int, int antigen) -> const BehaviourGene& { return genes[antigen - 1]; };
    auto learn = [&](int, int antigen, double r) {
        score_sum[antigen - 1] += r;
        ++score_count[antigen - 1];
    };
    auto no_trace = [](int, int, int) {};

    const LoopOutcome out =
        control_loop(world, profile, epuck_ref, cfg, seed, select, gene_of, learn, no_trace);

    DirectEpisodeOutcome result;
    result.time = out.time;
    result.collisions = out.collisions;
    result.failed = out.failed;
    for (int j = 0; j < kAntigenCount; ++j) {
        // genes never scored stay neutral
        result.mean_scores[j] = score_count[j] > 0 ? score_sum[j] / score_count[j] : 0.5;
    }
    return result;
}

std::vector<EpisodeCost> calibrate_costs(const GeneticSequence& seq, const World& world,
                                         const PlatformProfile& profile,
                                         const PlatformProfile& epuck_ref,
                                         const EpisodeConfig& cfg, std::uint64_t seed) {
    std::vector<EpisodeCost> costs;
    costs.reserve(seq.sets);
    for (int set = 0; set < seq.sets; ++set) {
        std::array<BehaviourGene, kAntigenCount> genes;
        for (int j = 0; j < kAntigenCount; ++j) genes[j] = seq.gene(set, j);
        const DirectEpisodeOutcome out =
            run_direct_episode(world, profile, epuck_ref, genes, cfg,
                               mix64(seed ^ mix64(static_cast<std::uint64_t>(set))));
        costs.push_back({out.time, out.collisions});
    }
    return costs;
}

}  // namespace aisim
