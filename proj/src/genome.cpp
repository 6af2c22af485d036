#include "aisim/genome.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace aisim {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw GenomeError(msg);
}

void check_range(int value, int lo, int hi, const char* field) {
    if (value < lo || value > hi) {
        throw GenomeError(std::string("field ") + field + " out of range: " +
                          std::to_string(value) + " not in [" + std::to_string(lo) +
                          "," + std::to_string(hi) + "]");
    }
}

}  // namespace

void validate_gene(const BehaviourGene& g, const GeneLimits& limits) {
    check_range(g.antigen_index, 0, kAntigenCount - 1, "antigen");
    check_range(g.type, 1, 6, "T");
    check_range(g.speed, limits.speed_min, limits.speed_max, "S");
    check_range(g.turn_frequency, 0, 100, "F");
    check_range(g.turn_angle, 0, 100, "A");
    check_range(g.direction, 1, 2, "D");
    check_range(g.right_turn_frequency, 0, 100, "Rf");
    check_range(g.right_turn_angle, 0, 100, "Ra");
    if (g.score < 0) throw GenomeError("field score out of range: must be >= 0");
}

BehaviourGene decode_line(std::string_view line, const GeneLimits& limits) {
    static constexpr std::array<const char*, 9> kFields = {
        "antigen", "T", "S", "F", "A", "D", "Rf", "Ra", "score"};

    std::istringstream in{std::string(line)};
    std::array<int, 9> values{};
    std::string token;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(in >> token)) throw GenomeError("expected 9 fields, got " + std::to_string(i));
        int v = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw GenomeError(std::string("field ") + kFields[i] + " is not an integer: '" +
                              token + "'");
        }
        values[i] = v;
    }
    require(!(in >> token), "expected 9 fields, got trailing token '" + token + "'");

    BehaviourGene g;
    g.antigen_index = values[0];
    g.type = values[1];
    g.speed = values[2];
    g.turn_frequency = values[3];
    g.turn_angle = values[4];
    g.direction = values[5];
    g.right_turn_frequency = values[6];
    g.right_turn_angle = values[7];
    g.score = values[8];
    validate_gene(g, limits);
    return g;
}

std::string encode_line(const BehaviourGene& g) {
    std::ostringstream out;
    out << g.antigen_index << ' ' << g.type << ' ' << g.speed << ' ' << g.turn_frequency
        << ' ' << g.turn_angle << ' ' << g.direction << ' ' << g.right_turn_frequency
        << ' ' << g.right_turn_angle << ' ' << g.score << '\n';
    return out.str();
}

GeneticSequence load_sequence(std::istream& in, int n, const GeneLimits& limits) {
    require(n >= 1, "solution set count must be >= 1");
    GeneticSequence seq;
    seq.sets = n;
    seq.genes.reserve(static_cast<std::size_t>(n) * kAntigenCount);

    std::string line;
    for (int set = 0; set < n; ++set) {
        std::array<bool, kAntigenCount> seen{};
        for (int k = 0; k < kAntigenCount; ++k) {
            // skip blank lines between sets
            do {
                if (!std::getline(in, line)) {
                    throw GenomeError("incomplete solution set " + std::to_string(set + 1));
                }
            } while (line.find_first_not_of(" \t\r") == std::string::npos);

            BehaviourGene g = decode_line(line, limits);
            if (seen[g.antigen_index]) {
                throw GenomeError("duplicate antigen index " + std::to_string(g.antigen_index) +
                                  " in solution set " + std::to_string(set + 1));
            }
            seen[g.antigen_index] = true;
            seq.genes.push_back(g);
        }
        // present the set ordered by antigen index regardless of file ordering inside the set
        std::sort(seq.genes.end() - kAntigenCount, seq.genes.end(),
                  [](const BehaviourGene& a, const BehaviourGene& b) {
                      return a.antigen_index < b.antigen_index;
                  });
    }
    return seq;
}

void save_sequence(std::ostream& out, const GeneticSequence& seq) {
    for (const BehaviourGene& g : seq.genes) out << encode_line(g);
}

BehaviourGene random_gene(int antigen_index, Rng& rng, const GeneLimits& limits) {
    BehaviourGene g;
    g.antigen_index = antigen_index;
    g.type = rng.uniform_int(1, 6);
    g.speed = rng.uniform_int(limits.speed_min, limits.speed_max);
    g.turn_frequency = rng.uniform_int(0, 100);
    g.turn_angle = rng.uniform_int(0, 100);
    g.direction = rng.uniform_int(1, 2);
    g.right_turn_frequency = rng.uniform_int(0, 100);
    g.right_turn_angle = rng.uniform_int(0, 100);
    g.score = 0;
    return g;
}

}  // namespace aisim
