#include "aisim/behaviour.hpp"

#include <algorithm>

#include "aisim/perception.hpp"

namespace aisim {

namespace {

double reduced(double speed, int percent) { return speed * (1.0 - percent / 100.0); }

}  // namespace

BehaviourRuntime::BehaviourRuntime(const BehaviourGene& gene, Rng rng, int dwell_ticks)
    : gene_(gene), rng_(std::move(rng)), dwell_ticks_(dwell_ticks) {}

void BehaviourRuntime::resample_mode() {
    const double turn_p = gene_.turn_frequency / 100.0;
    switch (gene_.type) {
        case 1:  // wander, one fixed direction
            if (rng_.chance(turn_p)) {
                mode_ = gene_.direction == 2 ? Mode::turn_right : Mode::turn_left;
            } else {
                mode_ = Mode::straight;
            }
            break;
        case 2:  // wander, both directions; Rf splits the turning time
            if (rng_.chance(turn_p)) {
                mode_ = rng_.chance(gene_.right_turn_frequency / 100.0) ? Mode::turn_right
                                                                        : Mode::turn_left;
            } else {
                mode_ = Mode::straight;
            }
            break;
        default:
            mode_ = Mode::straight;  // types 3-6 do not use phased turning
            break;
    }
}

WheelCommand BehaviourRuntime::tick(BlobDir blob) {
    if (dwell_remaining_ == 0) {
        resample_mode();
        dwell_remaining_ = dwell_ticks_;
    }
    --dwell_remaining_;

    const double s = gene_.speed;
    switch (gene_.type) {
        case 1:
        case 2: {
            if (mode_ == Mode::turn_right) {
                const int angle = gene_.type == 2 ? gene_.right_turn_angle : gene_.turn_angle;
                return {s, reduced(s, angle)};
            }
            if (mode_ == Mode::turn_left) return {reduced(s, gene_.turn_angle), s};
            return {s, s};
        }
        case 3: {  // turning forwards
            if (gene_.direction == 2) return {s, reduced(s, gene_.turn_angle)};
            return {reduced(s, gene_.turn_angle), s};
        }
        case 4: {  // turning on the spot
            const double w = s * gene_.turn_angle / 100.0;
            if (gene_.direction == 2) return {w, -w};  // clockwise
            return {-w, w};
        }
        case 5: {  // turning backwards
            if (gene_.direction == 2) return {-s, -reduced(s, gene_.turn_angle)};
            return {-reduced(s, gene_.turn_angle), -s};
        }
        case 6: {  // tracking targets
            if (blob == BlobDir::left) return {reduced(s, gene_.turn_angle), s};
            if (blob == BlobDir::right) return {s, reduced(s, gene_.turn_angle)};
            return {s, s};
        }
        default:
            return {0.0, 0.0};
    }
}

double score_behaviour(int prev_antigen, int now_antigen, bool contact, double progress,
                       const ScoreWeights& w) {
    double r = w.base;
    const int before = danger_level(prev_antigen);
    const int after = danger_level(now_antigen);
    if (after < before) r += w.de_escalate;
    if (after > before) r -= w.escalate;
    if (now_antigen == 2 && (prev_antigen != 2 || progress > 0.0)) r += w.target;
    if (contact) r -= w.contact;
    return std::clamp(r, 0.0, 1.0);
}

}  // namespace aisim
