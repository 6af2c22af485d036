#pragma once

#include "aisim/genome.hpp"
#include "aisim/platform.hpp"
#include "aisim/rng.hpp"
#include "aisim/world.hpp"

namespace aisim {

// Executes one gene as a per-tick wheel-speed stream. Turn/straight phases are
// resampled per dwell window rather than per tick, so the F percentage reads as
// "fraction of time" instead of per-tick noise.
class BehaviourRuntime {
public:
    BehaviourRuntime(const BehaviourGene& gene, Rng rng, int dwell_ticks = 5);

    WheelCommand tick(BlobDir blob);

    const BehaviourGene& gene() const { return gene_; }

private:
    enum class Mode { straight, turn_left, turn_right };

    void resample_mode();

    BehaviourGene gene_;
    Rng rng_;
    int dwell_ticks_;
    int dwell_remaining_ = 0;
    Mode mode_ = Mode::straight;
};

// Reinforcement weights for scoring an evaluation window. The rule itself is a
// reconstruction; every weight is tunable.
struct ScoreWeights {
    double base = 0.5;
    double de_escalate = 0.2;
    double escalate = 0.2;
    double target = 0.2;
    double contact = 0.3;
};

// Score in [0,1] for the behaviour executed between two antigen observations.
// progress: metres moved towards the goal over the window (positive = closer).
double score_behaviour(int prev_antigen, int now_antigen, bool contact, double progress,
                       const ScoreWeights& w = {});

}  // namespace aisim
