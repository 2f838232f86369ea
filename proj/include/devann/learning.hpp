#pragma once

// Activity Dependence: the soma program runs again while tasks are being
// performed, with a task-derived reward on its reward input and the phase
// flag raised, and a configured subset of soma parameters takes the program's
// outputs. Everything else keeps its value; dendrites are never touched.

#include <array>
#include <string>
#include <vector>

#include "devann/brain.hpp"
#include "devann/errors.hpp"
#include "devann/rng.hpp"

namespace devann {

struct AdConfig {
    bool bias = false;
    bool health = false;
    bool position = false;  // x and y jointly, hidden somas only
    int epochs = 5;
    bool structural_updates = true;  // birth/death after updates when health is masked in

    bool empty_mask() const { return !bias && !health && !position; }
    bool operator==(const AdConfig&) const = default;
};

struct RewardSignal {
    double value = 0.0;  // in [-1, 1]
};

inline RewardSignal reward_from_cartpole(int steps, int max_steps) {
    return {2.0 * (static_cast<double>(steps) / max_steps) - 1.0};
}

inline RewardSignal reward_from_accuracy(int correct, int total) {
    if (total <= 0) throw ContractError("reward_from_accuracy: total must be > 0");
    return {2.0 * (static_cast<double>(correct) / total) - 1.0};
}

// One AD step. With an empty mask this is a no-op and the program is not even
// executed, which keeps base-model runs bit-identical to AD-free code.
inline void ad_update(Brain& brain, const CompiledGenotype& programs, const AdConfig& config,
                      RewardSignal reward, const DevParams& dev, Rng& rng) {
    if (config.empty_mask()) return;
    std::array<double, kSomaProgramInputs> in;
    std::array<double, kSomaProgramOutputs> out;
    std::vector<double> scratch;
    for (Soma& s : brain.somas) {
        if (s.kind == SomaKind::input) continue;
        detail::fill_soma_inputs(s, reward.value, 1.0, in);
        execute(programs.soma, in, out, scratch);
        if (config.position && s.kind == SomaKind::hidden) {
            s.x = out[0];
            s.y = out[1];
        }
        if (config.health) s.health = out[2];
        if (config.bias) s.bias = out[3];
    }
    if (config.health && config.structural_updates) apply_birth_death(brain, dev, rng);
}

}  // namespace devann
