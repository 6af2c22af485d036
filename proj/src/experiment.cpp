#include "aisim/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

namespace aisim {

namespace {

std::uint64_t pair_seed(std::uint64_t master, std::size_t world_index, int pair) {
    return mix64(master ^ mix64(world_index * 100000 + static_cast<std::uint64_t>(pair)));
}

std::vector<double> times_of(const std::vector<PairResult>& pairs, bool idiotypic) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const PairResult& p : pairs) out.push_back(idiotypic ? p.idiotypic.time : p.rl_only.time);
    return out;
}

std::vector<double> collisions_of(const std::vector<PairResult>& pairs, bool idiotypic) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const PairResult& p : pairs) {
        out.push_back(static_cast<double>(idiotypic ? p.idiotypic.collisions
                                                    : p.rl_only.collisions));
    }
    return out;
}

ArmSummary summarize_arm(const std::vector<PairResult>& pairs, bool idiotypic) {
    ArmSummary s;
    s.time = summarize(times_of(pairs, idiotypic));
    s.collisions = summarize(collisions_of(pairs, idiotypic));
    int fails = 0;
    for (const PairResult& p : pairs) {
        fails += (idiotypic ? p.idiotypic.failed : p.rl_only.failed) ? 1 : 0;
    }
    s.fail_rate = static_cast<double>(fails) / static_cast<double>(pairs.size());
    return s;
}

}  // namespace

void compute_statistics(WorldComparison& wc) {
    if (wc.pairs.empty()) throw std::runtime_error("comparison has no pairs");
    wc.idiotypic = summarize_arm(wc.pairs, true);
    wc.rl_only = summarize_arm(wc.pairs, false);

    const std::vector<double> ti = times_of(wc.pairs, true);
    const std::vector<double> tr = times_of(wc.pairs, false);
    const std::vector<double> ci = collisions_of(wc.pairs, true);
    const std::vector<double> cr = collisions_of(wc.pairs, false);
    wc.p_time = mann_whitney(ti, tr);
    wc.p_collisions = mann_whitney(ci, cr);
    wc.a_time = a_test(tr, ti);
    wc.a_collisions = a_test(cr, ci);
}

ComparisonReport run_experiment(const GeneticSequence& seq, const PlatformProfile& profile,
                                const PlatformProfile& epuck_ref, const ImmuneConfig& icfg,
                                const EpisodeConfig& ecfg, const ExperimentConfig& xcfg,
                                bool same_mode_both_arms,
                                const std::vector<EpisodeCost>* set_costs) {
    if (xcfg.runs_per_arm < 2) throw std::runtime_error("experiment needs runs_per_arm >= 2");

    ComparisonReport report;
    for (std::size_t w = 0; w < xcfg.worlds.size(); ++w) {
        const WorldKind kind = xcfg.worlds[w];

        // Set rating for the paratope weighting: evolved costs when available,
        // otherwise one calibration episode per solution set on a fresh world;
        // reused for every pair in this world kind.
        std::vector<EpisodeCost> costs;
        if (set_costs) {
            costs = *set_costs;
        } else {
            const std::uint64_t cal_seed = mix64(xcfg.master_seed ^ mix64(555 + w));
            const World cal_world = generate_world(kind, cal_seed, xcfg.world_scale);
            costs = calibrate_costs(seq, cal_world, profile, epuck_ref, ecfg, cal_seed);
        }
        const Repertoire base = Repertoire::build(seq, icfg, costs);

        WorldComparison wc;
        wc.kind = kind;
        wc.pairs.resize(xcfg.runs_per_arm);

        auto run_pair = [&](int p) {
            const std::uint64_t seed = pair_seed(xcfg.master_seed, w, p);
            const std::uint64_t episode_seed = mix64(seed ^ 0x5eedULL);

            ImmuneConfig idio_cfg = icfg;
            ImmuneConfig rl_cfg = icfg;
            if (!same_mode_both_arms) {
                idio_cfg.idiotypic_enabled = true;
                rl_cfg.idiotypic_enabled = false;
            }

            PairResult pr;
            pr.world_seed = seed;
            {
                World world = generate_world(kind, seed, xcfg.world_scale);
                Repertoire rep = base;
                pr.idiotypic = run_episode(std::move(world), profile, epuck_ref, rep, idio_cfg,
                                           ecfg, episode_seed);
            }
            {
                World world = generate_world(kind, seed, xcfg.world_scale);
                Repertoire rep = base;
                pr.rl_only = run_episode(std::move(world), profile, epuck_ref, rep, rl_cfg, ecfg,
                                         episode_seed);
            }
            wc.pairs[p] = pr;
        };

        // pairs are independent; results land in their slot so ordering is stable
        const int stride = std::max(1, xcfg.threads);
        for (int base_p = 0; base_p < xcfg.runs_per_arm; base_p += stride) {
            std::vector<std::future<void>> batch;
            for (int p = base_p; p < std::min(base_p + stride, xcfg.runs_per_arm); ++p) {
                batch.push_back(std::async(std::launch::async, run_pair, p));
            }
            for (auto& f : batch) f.get();
        }

        compute_statistics(wc);
        report.worlds.push_back(std::move(wc));
    }
    return report;
}

void write_episode_csv(std::ostream& out, const ComparisonReport& report) {
    out << "world,pair,arm,world_seed,time,collisions,contacts,failed,mean_diff_rate\n";
    char buf[240];
    for (const WorldComparison& wc : report.worlds) {
        for (std::size_t p = 0; p < wc.pairs.size(); ++p) {
            const PairResult& pr = wc.pairs[p];
            for (int arm = 0; arm < 2; ++arm) {
                const EpisodeResult& e = arm == 0 ? pr.idiotypic : pr.rl_only;
                std::snprintf(buf, sizeof buf, "%s,%zu,%s,%llu,%.1f,%d,%d,%d,%.6f\n",
                              to_string(wc.kind).c_str(), p, arm == 0 ? "idiotypic" : "rl_only",
                              static_cast<unsigned long long>(pr.world_seed), e.time,
                              e.collisions, e.physical_contacts, e.failed ? 1 : 0,
                              e.mean_diff_rate);
                out << buf;
            }
        }
    }
}

ComparisonReport read_episode_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty episode CSV");

    std::map<std::string, std::map<int, PairResult>> by_world;
    std::vector<std::string> world_order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string world, arm, field;
        int pair = 0;
        PairResult tmp;
        EpisodeResult e;
        std::uint64_t seed = 0;
        std::getline(ss, world, ',');
        std::getline(ss, field, ',');
        pair = std::stoi(field);
        std::getline(ss, arm, ',');
        std::getline(ss, field, ',');
        seed = std::stoull(field);
        std::getline(ss, field, ',');
        e.time = std::stod(field);
        std::getline(ss, field, ',');
        e.collisions = std::stoi(field);
        std::getline(ss, field, ',');
        e.physical_contacts = std::stoi(field);
        std::getline(ss, field, ',');
        e.failed = std::stoi(field) != 0;
        std::getline(ss, field, ',');
        e.mean_diff_rate = std::stod(field);

        if (by_world.find(world) == by_world.end()) world_order.push_back(world);
        PairResult& pr = by_world[world][pair];
        pr.world_seed = seed;
        if (arm == "idiotypic") pr.idiotypic = e;
        else pr.rl_only = e;
    }

    ComparisonReport report;
    for (const std::string& w : world_order) {
        WorldComparison wc;
        wc.kind = parse_world_kind(w);
        for (auto& [pair, pr] : by_world[w]) wc.pairs.push_back(pr);
        compute_statistics(wc);
        report.worlds.push_back(std::move(wc));
    }
    return report;
}

void write_report_csv(std::ostream& out, const ComparisonReport& report) {
    out << "world,arm,med_time,iqr_time,med_collisions,iqr_collisions,fail_rate,"
           "p_time,p_collisions,a_time,a_collisions\n";
    char buf[240];
    for (const WorldComparison& wc : report.worlds) {
        for (int arm = 0; arm < 2; ++arm) {
            const ArmSummary& s = arm == 0 ? wc.idiotypic : wc.rl_only;
            std::snprintf(buf, sizeof buf, "%s,%s,%.1f,%.1f,%.1f,%.1f,%.3f,%.4f,%.4f,%.3f,%.3f\n",
                          to_string(wc.kind).c_str(), arm == 0 ? "idiotypic" : "rl_only",
                          s.time.median, s.time.iqr, s.collisions.median, s.collisions.iqr,
                          s.fail_rate, wc.p_time, wc.p_collisions, wc.a_time, wc.a_collisions);
            out << buf;
        }
    }
}

void write_report_text(std::ostream& out, const ComparisonReport& report) {
    out << "Paired comparison: idiotypic vs RL-only behaviour selection\n";
    out << "A-values give P(RL-only sample > idiotypic sample); above 0.5 favours the "
           "idiotypic arm, ~0.63 medium, ~0.70 large.\n\n";
    char buf[240];
    for (const WorldComparison& wc : report.worlds) {
        out << "world " << to_string(wc.kind) << " (" << wc.pairs.size() << " pairs)\n";
        out << "  arm        med t    IQR t   med c  IQR c  fail\n";
        for (int arm = 0; arm < 2; ++arm) {
            const ArmSummary& s = arm == 0 ? wc.idiotypic : wc.rl_only;
            std::snprintf(buf, sizeof buf, "  %-9s %7.1f %7.1f %6.1f %6.1f %4.0f%%\n",
                          arm == 0 ? "idiotypic" : "rl_only", s.time.median, s.time.iqr,
                          s.collisions.median, s.collisions.iqr, 100.0 * s.fail_rate);
            out << buf;
        }
        std::snprintf(buf, sizeof buf,
                      "  p(time) = %.4f  p(collisions) = %.4f  A(time) = %.3f  "
                      "A(collisions) = %.3f\n\n",
                      wc.p_time, wc.p_collisions, wc.a_time, wc.a_collisions);
        out << buf;
    }
}

}  // namespace aisim
