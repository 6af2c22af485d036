#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aisim/rng.hpp"

namespace aisim {

inline constexpr int kAntigenCount = 8;  // antigens per solution set (= antibodies per set)

// Tunable attribute bounds. The percentages are fixed by their meaning; the
// speed window keeps the GA search space reasonable.
struct GeneLimits {
    int speed_min = 100;
    int speed_max = 900;
};

// One evolved behaviour: the unit of genetic encoding.
// File order: antigen T S F A D Rf Ra score.
struct BehaviourGene {
    int antigen_index = 0;        // 0..7 (display adds 1)
    int type = 1;                 // T, 1..6
    int speed = 100;              // S, epuck speed units per second
    int turn_frequency = 0;       // F, % of time spent turning
    int turn_angle = 0;           // A, % reduction of one wheel speed
    int direction = 1;            // D, 1 = left, 2 = right
    int right_turn_frequency = 0; // Rf, % of turning time spent turning right
    int right_turn_angle = 0;     // Ra, % reduction of the right wheel speed
    int score = 0;                // final reinforcement score, >= 0

    bool operator==(const BehaviourGene&) const = default;
};

class GenomeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void validate_gene(const BehaviourGene& g, const GeneLimits& limits = {});

// Nine whitespace-separated integers; trailing tokens are rejected.
BehaviourGene decode_line(std::string_view line, const GeneLimits& limits = {});

// Nine integers, single-space separated, newline-terminated; inverse of decode_line.
std::string encode_line(const BehaviourGene& g);

// n solution sets of one gene per antigen, in file order (set-major, antigen-minor).
struct GeneticSequence {
    int sets = 0;
    std::vector<BehaviourGene> genes;  // sets * kAntigenCount entries

    const BehaviourGene& gene(int set, int antigen_index) const {
        return genes[static_cast<std::size_t>(set) * kAntigenCount + antigen_index];
    }
    BehaviourGene& gene(int set, int antigen_index) {
        return genes[static_cast<std::size_t>(set) * kAntigenCount + antigen_index];
    }
};

// Reads n*8 lines grouped by solution set; enforces per-set antigen coverage.
GeneticSequence load_sequence(std::istream& in, int n, const GeneLimits& limits = {});

void save_sequence(std::ostream& out, const GeneticSequence& seq);

// Uniform random valid gene for the given antigen slot (score 0).
BehaviourGene random_gene(int antigen_index, Rng& rng, const GeneLimits& limits = {});

}  // namespace aisim
