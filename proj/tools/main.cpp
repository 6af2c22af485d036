#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "aisim/config.hpp"
#include "aisim/evolution.hpp"
#include "aisim/experiment.hpp"

using namespace aisim;

namespace {

PlatformProfile resolve_profile(const std::string& name) {
    if (std::filesystem::exists(name)) {
        std::ifstream in(name);
        if (!in) throw std::runtime_error("cannot open profile file " + name);
        return load_profile(in);
    }
    return builtin_profile(name);
}

// Non-blank line count divided by the antigen count gives the set count.
GeneticSequence load_sequence_file(const std::string& path) {
    std::ifstream count_in(path);
    if (!count_in) throw std::runtime_error("cannot open sequence file " + path);
    int lines = 0;
    for (std::string line; std::getline(count_in, line);) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) ++lines;
    }
    if (lines == 0 || lines % kAntigenCount != 0) {
        throw std::runtime_error("sequence file must hold a multiple of 8 gene lines");
    }
    std::ifstream in(path);
    return load_sequence(in, lines / kAntigenCount);
}

std::vector<EpisodeCost> load_costs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open costs file " + path);
    std::vector<EpisodeCost> costs;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        EpisodeCost c;
        if (std::sscanf(line.c_str(), "%lf,%d", &c.time, &c.collisions) != 2) {
            throw std::runtime_error("bad costs line: " + line);
        }
        costs.push_back(c);
    }
    if (costs.empty()) throw std::runtime_error("costs file has no rows: " + path);
    return costs;
}

std::filesystem::path out_path(const std::string& name) {
    if (const char* dir = std::getenv("AISIM_OUT_DIR")) {
        std::filesystem::create_directories(dir);
        return std::filesystem::path(dir) / name;
    }
    return name;
}

std::ofstream open_out(const std::string& name) {
    const std::filesystem::path p = out_path(name);
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

void apply_config(const IniFile& ini, ImmuneConfig& cfg) {
    cfg.k1 = ini.get_double("immune", "k1", cfg.k1);
    cfg.k2 = ini.get_double("immune", "k2", cfg.k2);
    cfg.k3 = ini.get_double("immune", "k3", cfg.k3);
    cfg.clone_scale = ini.get_double("immune", "clone_scale", cfg.clone_scale);
    cfg.concentration_scale =
        ini.get_double("immune", "concentration_scale", cfg.concentration_scale);
    cfg.initial_clones = ini.get_double("immune", "initial_clones", cfg.initial_clones);
    cfg.rho_stl = ini.get_double("immune", "rho_stl", cfg.rho_stl);
    cfg.learning_rate = ini.get_double("immune", "learning_rate", cfg.learning_rate);
    cfg.network_gain = ini.get_double("immune", "network_gain", cfg.network_gain);
    cfg.paratope_floor = ini.get_double("immune", "paratope_floor", cfg.paratope_floor);
    cfg.idiotypic_enabled = ini.get_bool("immune", "idiotypic_enabled", cfg.idiotypic_enabled);
}

void apply_config(const IniFile& ini, EpisodeConfig& cfg) {
    cfg.dt = ini.get_double("episode", "dt", cfg.dt);
    cfg.time_cap = ini.get_double("episode", "time_cap", cfg.time_cap);
    cfg.score_window_cap = ini.get_int("episode", "score_window_cap", cfg.score_window_cap);
    cfg.dwell_ticks = ini.get_int("episode", "dwell_ticks", cfg.dwell_ticks);
}

void apply_config(const IniFile& ini, GaConfig& cfg) {
    cfg.population = ini.get_int("ga", "population", cfg.population);
    cfg.populations = ini.get_int("ga", "populations", cfg.populations);
    cfg.replacement_rate = ini.get_double("ga", "replacement_rate", cfg.replacement_rate);
    cfg.mutation_rate = ini.get_double("ga", "mutation_rate", cfg.mutation_rate);
    cfg.cost_weight = ini.get_double("ga", "cost_weight", cfg.cost_weight);
    cfg.max_generations = ini.get_int("ga", "max_generations", cfg.max_generations);
    cfg.convergence_window = ini.get_int("ga", "convergence_window", cfg.convergence_window);
    cfg.convergence_eps = ini.get_double("ga", "convergence_eps", cfg.convergence_eps);
    cfg.low_score_floor = ini.get_double("ga", "low_score_floor", cfg.low_score_floor);
    cfg.low_score_streak = ini.get_int("ga", "low_score_streak", cfg.low_score_streak);
    cfg.eval_worlds = ini.get_int("ga", "eval_worlds", cfg.eval_worlds);
}

IniFile load_ini(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return IniFile::parse(in);
}

std::vector<WorldKind> parse_world_list(const std::string& csv) {
    std::vector<WorldKind> kinds;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) kinds.push_back(parse_world_kind(token));
    }
    if (kinds.empty()) throw std::runtime_error("no world kinds given");
    return kinds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Immune-network behaviour selection: evolution, episodes, experiments"};
    app.require_subcommand(1);

    std::string world_kind = "maze_markers";
    std::string profile_name = "pioneer_sim";
    std::string config_path;
    std::uint64_t seed = 1;
    double scale = 4.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--world-kind", world_kind, "maze_markers or block_search");
        cmd->add_option("--profile", profile_name, "builtin name or profile file");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--scale", scale, "world scale in metres");
        cmd->add_option("--config", config_path, "INI file with [ga]/[immune]/[episode] overrides");
    };

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "evolve a genetic sequence offline");
    std::string evolve_out = "sequence.txt";
    std::string gen_log_path;
    add_common(evolve_cmd);
    std::string costs_out;
    evolve_cmd->add_option("--out", evolve_out, "output sequence file");
    evolve_cmd->add_option("--gen-log", gen_log_path, "per-generation cost CSV");
    evolve_cmd->add_option("--costs-out", costs_out,
                           "per-set evaluation cost CSV, reusable via --costs");

    // run
    auto* run_cmd = app.add_subcommand("run", "run one episode from a sequence file");
    std::string run_sequence;
    std::string trace_path;
    bool idiotypic = true;
    add_common(run_cmd);
    std::string run_costs;
    run_cmd->add_option("--sequence", run_sequence, "genetic sequence file")->required();
    run_cmd->add_option("--costs", run_costs,
                        "per-set cost CSV from evolve; default is one calibration episode per set");
    run_cmd->add_flag("--idiotypic,!--rl-only", idiotypic, "enable the idiotypic network");
    run_cmd->add_option("--trace", trace_path, "per-tick trace CSV");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "paired idiotypic vs RL-only batch");
    std::string exp_sequence;
    std::string exp_out = "experiment";
    std::string worlds_csv = "maze_markers,block_search";
    int runs = 30;
    int threads = 4;
    add_common(exp_cmd);
    std::string exp_costs;
    exp_cmd->add_option("--sequence", exp_sequence, "genetic sequence file")->required();
    exp_cmd->add_option("--costs", exp_costs,
                        "per-set cost CSV from evolve; default is one calibration episode per set");
    exp_cmd->add_option("--runs", runs, "paired runs per world kind");
    exp_cmd->add_option("--worlds", worlds_csv, "comma-separated world kinds");
    exp_cmd->add_option("--threads", threads, "parallel pairs in flight");
    exp_cmd->add_option("--out", exp_out, "output file prefix");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "recompute a report from an episode CSV");
    std::string episodes_path;
    std::string stats_out = "report";
    stats_cmd->add_option("--episodes", episodes_path, "episode CSV from a previous run")
        ->required();
    stats_cmd->add_option("--out", stats_out, "output file prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve_cmd) {
            const IniFile ini = load_ini(config_path);
            GaConfig gcfg;
            EpisodeConfig ecfg;
            apply_config(ini, gcfg);
            apply_config(ini, ecfg);
            const PlatformProfile profile = resolve_profile(profile_name);
            const PlatformProfile epuck = epuck_profile();

            std::ofstream log;
            if (!gen_log_path.empty()) log = open_out(gen_log_path);
            const EvolveOutcome out =
                evolve(gcfg, ecfg, parse_world_kind(world_kind), scale, profile, epuck, seed,
                       gen_log_path.empty() ? nullptr : &log);
            std::ofstream seq_out = open_out(evolve_out);
            save_sequence(seq_out, out.sequence);
            std::cout << "evolved " << out.sequence.sets << " solution sets -> "
                      << out_path(evolve_out).string() << "\n";
            for (std::size_t i = 0; i < out.costs.size(); ++i) {
                std::cout << "  set " << i << ": t = " << out.costs[i].time
                          << " s, collisions = " << out.costs[i].collisions << "\n";
            }
            if (!costs_out.empty()) {
                std::ofstream cout_file = open_out(costs_out);
                cout_file << "time,collisions\n";
                char buf[64];
                for (const EpisodeCost& c : out.costs) {
                    std::snprintf(buf, sizeof buf, "%.1f,%d\n", c.time, c.collisions);
                    cout_file << buf;
                }
            }
        } else if (*run_cmd) {
            const IniFile ini = load_ini(config_path);
            ImmuneConfig icfg;
            EpisodeConfig ecfg;
            apply_config(ini, icfg);
            apply_config(ini, ecfg);
            icfg.idiotypic_enabled = idiotypic;

            const PlatformProfile profile = resolve_profile(profile_name);
            const PlatformProfile epuck = epuck_profile();
            const GeneticSequence seq = load_sequence_file(run_sequence);
            const WorldKind kind = parse_world_kind(world_kind);

            const World world = generate_world(kind, seed, scale);
            const std::vector<EpisodeCost> costs =
                run_costs.empty() ? calibrate_costs(seq, world, profile, epuck, ecfg, seed)
                                  : load_costs_file(run_costs);
            Repertoire rep = Repertoire::build(seq, icfg, costs);

            std::ofstream trace;
            if (!trace_path.empty()) trace = open_out(trace_path);
            const EpisodeResult r =
                run_episode(world, profile, epuck, rep, icfg, ecfg, mix64(seed ^ 0x5eedULL),
                            trace_path.empty() ? nullptr : &trace);
            std::cout << (r.failed ? "failed" : "reached goal") << " in " << r.time
                      << " s, collisions = " << r.collisions
                      << ", contacts = " << r.physical_contacts
                      << ", difference rate = " << r.mean_diff_rate << "\n";
        } else if (*exp_cmd) {
            const IniFile ini = load_ini(config_path);
            ImmuneConfig icfg;
            EpisodeConfig ecfg;
            apply_config(ini, icfg);
            apply_config(ini, ecfg);

            const PlatformProfile profile = resolve_profile(profile_name);
            const PlatformProfile epuck = epuck_profile();
            const GeneticSequence seq = load_sequence_file(exp_sequence);

            ExperimentConfig xcfg;
            xcfg.runs_per_arm = runs;
            xcfg.worlds = parse_world_list(worlds_csv);
            xcfg.world_scale = scale;
            xcfg.master_seed = seed;
            xcfg.threads = threads;

            std::vector<EpisodeCost> set_costs;
            if (!exp_costs.empty()) set_costs = load_costs_file(exp_costs);
            const ComparisonReport report =
                run_experiment(seq, profile, epuck, icfg, ecfg, xcfg, false,
                               exp_costs.empty() ? nullptr : &set_costs);
            {
                std::ofstream out = open_out(exp_out + "_episodes.csv");
                write_episode_csv(out, report);
            }
            {
                std::ofstream out = open_out(exp_out + "_report.csv");
                write_report_csv(out, report);
            }
            {
                std::ofstream out = open_out(exp_out + "_report.txt");
                write_report_text(out, report);
            }
            write_report_text(std::cout, report);
        } else if (*stats_cmd) {
            std::ifstream in(episodes_path);
            if (!in) throw std::runtime_error("cannot open " + episodes_path);
            const ComparisonReport report = read_episode_csv(in);
            {
                std::ofstream out = open_out(stats_out + "_report.csv");
                write_report_csv(out, report);
            }
            {
                std::ofstream out = open_out(stats_out + "_report.txt");
                write_report_text(out, report);
            }
            write_report_text(std::cout, report);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
