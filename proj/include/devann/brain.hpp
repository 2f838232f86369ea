#pragma once

// The developmental neural network: somas (nodes) and dendrites (connections)
// living in a shared 2-D space. Two CGP programs drive growth; the mature
// brain is wired into a feed-forward phenotype by the nearest-left rule and
// evaluated with masked task inputs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "devann/cgp.hpp"
#include "devann/errors.hpp"
#include "devann/rng.hpp"

namespace devann {

enum class SomaKind : std::uint8_t { input, hidden, output };

inline const char* to_string(SomaKind k) {
    switch (k) {
        case SomaKind::input: return "input";
        case SomaKind::hidden: return "hidden";
        default: return "output";
    }
}

// A connection owned by a soma. Positions are absolute coordinates in the
// shared space, not offsets from the mother.
struct Dendrite {
    double x = 0.0;
    double y = 0.0;
    double weight = 0.0;
    double health = 0.5;
    bool operator==(const Dendrite&) const = default;
};

struct Soma {
    int id = 0;
    SomaKind kind = SomaKind::hidden;
    double x = 0.0;
    double y = 0.0;
    double health = 0.5;
    double bias = 0.0;
    std::vector<Dendrite> dendrites;  // always empty for kind == input
    bool operator==(const Soma&) const = default;
};

struct TaskSpec {
    std::string name;
    int num_inputs = 0;
    int num_outputs = 0;
};

struct TaskBinding {
    std::string name;
    std::vector<int> input_ids;
    std::vector<int> output_ids;
    bool operator==(const TaskBinding&) const = default;
};

struct Brain {
    std::vector<Soma> somas;  // inputs first, then outputs, then hidden by birth order
    std::vector<TaskBinding> tasks;
    int soma_cap = 32;       // hidden somas only
    int max_dendrites = 8;   // per soma
    int next_id = 0;
    bool operator==(const Brain&) const = default;
};

inline int hidden_count(const Brain& brain) {
    return static_cast<int>(std::count_if(
        brain.somas.begin(), brain.somas.end(),
        [](const Soma& s) { return s.kind == SomaKind::hidden; }));
}

struct BrainSettings {
    int init_dendrites_per_output = 4;
    int soma_cap = 32;
    int max_dendrites = 8;
};

struct DevParams {
    double theta_birth = 0.8;
    double theta_death = 0.2;
};

// Program I/O contracts. Soma program reads
//   [x, y, health, bias, mean dendrite weight, mean dendrite health, reward, phase]
// and writes [x', y', health', bias']. Dendrite program reads
//   [mother x, mother y, x, y, weight, health, reward, phase]
// and writes [x', y', weight', health']. Reward and phase are 0 during
// development; phase is 1 during activity-dependent learning.
inline constexpr int kSomaProgramInputs = 8;
inline constexpr int kSomaProgramOutputs = 4;
inline constexpr int kDendriteProgramInputs = 8;
inline constexpr int kDendriteProgramOutputs = 4;

// Decoded once per individual; development and learning share it.
struct CompiledGenotype {
    ActiveProgram soma;
    ActiveProgram dendrite;
};

inline CompiledGenotype compile(const Genotype& g) {
    if (g.soma_genome.num_inputs != kSomaProgramInputs ||
        g.soma_genome.num_outputs != kSomaProgramOutputs)
        throw ConfigError("genotype: soma program must be 8-in/4-out");
    if (g.dendrite_genome.num_inputs != kDendriteProgramInputs ||
        g.dendrite_genome.num_outputs != kDendriteProgramOutputs)
        throw ConfigError("genotype: dendrite program must be 8-in/4-out");
    return {decode(g.soma_genome), decode(g.dendrite_genome)};
}

inline Genotype random_genotype(int genome_length, Rng& rng) {
    Genotype g;
    g.soma_genome = random_genome(kSomaProgramInputs, kSomaProgramOutputs,
                                  genome_length, rng);
    g.dendrite_genome = random_genome(kDendriteProgramInputs, kDendriteProgramOutputs,
                                      genome_length, rng);
    return g;
}

// Input somas sit at x = -1, output somas at x = +1, each group evenly spaced
// in y (cell centers, so a single soma lands at y = 0). Every output soma
// starts with a few random dendrites; everything else grows from development.
inline Brain init_brain(std::span<const TaskSpec> task_specs, const BrainSettings& settings,
                        Rng& rng) {
    int total_in = 0, total_out = 0;
    for (const TaskSpec& t : task_specs) {
        if (t.num_inputs < 1 || t.num_outputs < 1)
            throw ConfigError("init_brain: task '" + t.name +
                              "' must declare at least one input and one output");
        total_in += t.num_inputs;
        total_out += t.num_outputs;
    }
    if (total_in == 0) throw ConfigError("init_brain: no task inputs");

    Brain brain;
    brain.soma_cap = settings.soma_cap;
    brain.max_dendrites = settings.max_dendrites;
    brain.tasks.reserve(task_specs.size());
    for (const TaskSpec& t : task_specs) brain.tasks.push_back({t.name, {}, {}});

    int gi = 0;
    for (std::size_t ti = 0; ti < task_specs.size(); ++ti) {
        for (int i = 0; i < task_specs[ti].num_inputs; ++i, ++gi) {
            Soma s;
            s.id = brain.next_id++;
            s.kind = SomaKind::input;
            s.x = -1.0;
            s.y = -1.0 + (2.0 * gi + 1.0) / total_in;
            s.health = 0.5;
            brain.tasks[ti].input_ids.push_back(s.id);
            brain.somas.push_back(std::move(s));
        }
    }
    int go = 0;
    for (std::size_t ti = 0; ti < task_specs.size(); ++ti) {
        for (int o = 0; o < task_specs[ti].num_outputs; ++o, ++go) {
            Soma s;
            s.id = brain.next_id++;
            s.kind = SomaKind::output;
            s.x = 1.0;
            s.y = -1.0 + (2.0 * go + 1.0) / total_out;
            s.health = 0.5;
            s.dendrites.reserve(settings.init_dendrites_per_output);
            for (int d = 0; d < settings.init_dendrites_per_output; ++d) {
                Dendrite den;
                den.x = uniform_range(rng, -1.0, 1.0);
                den.y = uniform_range(rng, -1.0, 1.0);
                den.weight = uniform_range(rng, -1.0, 1.0);
                den.health = 0.5;
                s.dendrites.push_back(den);
            }
            brain.tasks[ti].output_ids.push_back(s.id);
            brain.somas.push_back(std::move(s));
        }
    }
    return brain;
}

inline double jitter(double v, Rng& rng) {
    return clamp_unit(v + uniform_range(rng, -0.1, 0.1));
}

// Health-threshold structural change, in a fixed order: soma deaths, soma
// births, dendrite deaths, dendrite replication. Children appended during the
// birth scan do not themselves reproduce within the same call. Input and
// output somas never die; health resets to 0.5 only when a birth or
// replication actually happens.
inline void apply_birth_death(Brain& brain, const DevParams& dev, Rng& rng) {
    std::erase_if(brain.somas, [&](const Soma& s) {
        return s.kind == SomaKind::hidden && s.health < dev.theta_death;
    });

    int hidden = hidden_count(brain);
    const std::size_t n0 = brain.somas.size();
    for (std::size_t i = 0; i < n0; ++i) {
        if (brain.somas[i].kind == SomaKind::input) continue;
        if (brain.somas[i].health <= dev.theta_birth || hidden >= brain.soma_cap) continue;
        Soma child;
        child.id = brain.next_id++;
        child.kind = SomaKind::hidden;
        child.x = jitter(brain.somas[i].x, rng);
        child.y = jitter(brain.somas[i].y, rng);
        child.health = 0.5;
        child.bias = brain.somas[i].bias;
        child.dendrites = brain.somas[i].dendrites;
        for (Dendrite& d : child.dendrites) {
            d.x = jitter(d.x, rng);
            d.y = jitter(d.y, rng);
        }
        brain.somas[i].health = 0.5;
        brain.somas.push_back(std::move(child));  // may invalidate references, not indices
        ++hidden;
    }

    for (Soma& s : brain.somas) {
        if (s.kind == SomaKind::input) continue;
        std::erase_if(s.dendrites,
                      [&](const Dendrite& d) { return d.health < dev.theta_death; });
        const std::size_t m0 = s.dendrites.size();
        for (std::size_t j = 0; j < m0; ++j) {
            if (s.dendrites[j].health <= dev.theta_birth) continue;
            if (static_cast<int>(s.dendrites.size()) >= brain.max_dendrites) break;
            Dendrite copy = s.dendrites[j];
            copy.x = jitter(copy.x, rng);
            copy.y = jitter(copy.y, rng);
            copy.health = 0.5;
            s.dendrites[j].health = 0.5;
            s.dendrites.push_back(copy);
        }
    }
}

namespace detail {
inline void fill_soma_inputs(const Soma& s, double reward, double phase,
                             std::array<double, kSomaProgramInputs>& in) {
    double mean_w = 0.0, mean_h = 0.0;
    if (!s.dendrites.empty()) {
        for (const Dendrite& d : s.dendrites) {
            mean_w += d.weight;
            mean_h += d.health;
        }
        mean_w /= static_cast<double>(s.dendrites.size());
        mean_h /= static_cast<double>(s.dendrites.size());
    }
    in = {s.x, s.y, s.health, s.bias, mean_w, mean_h, reward, phase};
}
}  // namespace detail

// One development cycle: every non-input soma and every dendrite is updated
// from its pre-step values (synchronous update), then birth/death applies.
// Output somas keep their position; only health and bias develop.
inline void development_step(Brain& brain, const CompiledGenotype& programs,
                             const DevParams& dev, Rng& rng) {
    std::array<double, kSomaProgramInputs> in;
    std::array<double, kSomaProgramOutputs> out;
    std::vector<double> scratch;
    for (Soma& s : brain.somas) {
        if (s.kind == SomaKind::input) continue;
        const double mother_x = s.x, mother_y = s.y;
        detail::fill_soma_inputs(s, 0.0, 0.0, in);
        execute(programs.soma, in, out, scratch);
        if (s.kind == SomaKind::hidden) {
            s.x = out[0];
            s.y = out[1];
        }
        s.health = out[2];
        s.bias = out[3];
        for (Dendrite& d : s.dendrites) {
            in = {mother_x, mother_y, d.x, d.y, d.weight, d.health, 0.0, 0.0};
            execute(programs.dendrite, in, out, scratch);
            d.x = out[0];
            d.y = out[1];
            d.weight = out[2];
            d.health = out[3];
        }
    }
    apply_birth_death(brain, dev, rng);
}

inline void develop(Brain& brain, const CompiledGenotype& programs, int cycles,
                    const DevParams& dev, Rng& rng) {
    for (int c = 0; c < cycles; ++c) development_step(brain, programs, dev, rng);
}

// ---------------------------------------------------------------------------
// Wiring and evaluation

struct WiredConnection {
    int source = 0;  // slot of the soma this dendrite reads from
    double weight = 0.0;
};

struct WiredNode {
    int soma_id = 0;
    SomaKind kind = SomaKind::hidden;
    double x = 0.0;
    double y = 0.0;
    double bias = 0.0;
    std::vector<WiredConnection> in;
};

struct TaskIo {
    std::string name;
    std::vector<int> input_slots;
    std::vector<int> output_slots;
};

// Nodes in ascending (x, id) order; every connection source lies strictly
// left of its consumer, so slot order is a topological order.
struct WiredNetwork {
    std::vector<WiredNode> nodes;
    std::vector<TaskIo> tasks;
};

// Nearest-left wiring. A dendrite at or right of its mother is omitted; the
// rest connect to the Euclidean-closest soma strictly left of the dendrite.
// Output somas are never connection sources. Distance ties break toward
// smaller y, then smaller id.
inline WiredNetwork wire(const Brain& brain) {
    const std::size_t n = brain.somas.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Soma& sa = brain.somas[a];
        const Soma& sb = brain.somas[b];
        if (sa.x != sb.x) return sa.x < sb.x;
        return sa.id < sb.id;
    });

    WiredNetwork net;
    net.nodes.resize(n);
    std::vector<int> slot_of_index(n);
    for (std::size_t slot = 0; slot < n; ++slot) {
        const Soma& s = brain.somas[order[slot]];
        slot_of_index[order[slot]] = static_cast<int>(slot);
        net.nodes[slot] = {s.id, s.kind, s.x, s.y, s.bias, {}};
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Soma& s = brain.somas[i];
        if (s.kind == SomaKind::input) continue;
        const int slot = slot_of_index[i];
        for (const Dendrite& d : s.dendrites) {
            if (d.x >= s.x) continue;  // right of (or on) the mother: omitted
            int best_slot = -1;
            double best_d2 = 0.0, best_y = 0.0;
            int best_id = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const Soma& t = brain.somas[j];
                if (t.kind == SomaKind::output || t.x >= d.x) continue;
                const double dx = t.x - d.x, dy = t.y - d.y;
                const double d2 = dx * dx + dy * dy;
                const bool better =
                    best_slot < 0 || d2 < best_d2 ||
                    (d2 == best_d2 && (t.y < best_y || (t.y == best_y && t.id < best_id)));
                if (better) {
                    best_slot = slot_of_index[j];
                    best_d2 = d2;
                    best_y = t.y;
                    best_id = t.id;
                }
            }
            if (best_slot >= 0) net.nodes[slot].in.push_back({best_slot, d.weight});
        }
    }

    for (const TaskBinding& binding : brain.tasks) {
        TaskIo io;
        io.name = binding.name;
        auto slot_of_id = [&](int id) {
            for (std::size_t slot = 0; slot < n; ++slot)
                if (net.nodes[slot].soma_id == id) return static_cast<int>(slot);
            throw ContractError("wire: task binding references missing soma");
        };
        for (int id : binding.input_ids) io.input_slots.push_back(slot_of_id(id));
        for (int id : binding.output_ids) io.output_slots.push_back(slot_of_id(id));
        net.tasks.push_back(std::move(io));
    }
    return net;
}

// Masked-input evaluation: the chosen task's input somas emit the given
// values, every other input soma emits zero, and each non-input soma produces
// tanh(bias + sum of weighted sources). `values` is scratch, reused by hot
// callers; on return it holds every soma's emitted value by slot.
inline void evaluate_into(const WiredNetwork& net, int task_id,
                          std::span<const double> inputs, std::span<double> outputs,
                          std::vector<double>& values) {
    if (task_id < 0 || task_id >= static_cast<int>(net.tasks.size()))
        throw ContractError("evaluate: unknown task");
    const TaskIo& io = net.tasks[task_id];
    if (inputs.size() != io.input_slots.size())
        throw ContractError("evaluate: task input arity mismatch");
    if (outputs.size() != io.output_slots.size())
        throw ContractError("evaluate: task output arity mismatch");

    values.assign(net.nodes.size(), 0.0);
    for (std::size_t k = 0; k < inputs.size(); ++k)
        values[io.input_slots[k]] = inputs[k];
    for (std::size_t slot = 0; slot < net.nodes.size(); ++slot) {
        const WiredNode& node = net.nodes[slot];
        if (node.kind == SomaKind::input) continue;
        double acc = node.bias;
        for (const WiredConnection& c : node.in) acc += c.weight * values[c.source];
        values[slot] = std::tanh(acc);
    }
    for (std::size_t k = 0; k < outputs.size(); ++k)
        outputs[k] = values[io.output_slots[k]];
}

inline std::vector<double> evaluate(const WiredNetwork& net, int task_id,
                                    std::span<const double> inputs) {
    if (task_id < 0 || task_id >= static_cast<int>(net.tasks.size()))
        throw ContractError("evaluate: unknown task");
    std::vector<double> outputs(net.tasks[task_id].output_slots.size());
    std::vector<double> values;
    evaluate_into(net, task_id, inputs, outputs, values);
    return outputs;
}

// Row-batched evaluation used by the classification pass: identical
// arithmetic per row as evaluate(), laid out value-major for locality.
// `rows` is row-major with stride = the task's input arity; the result is
// row-major with stride = the task's output arity.
inline std::vector<double> evaluate_batch(const WiredNetwork& net, int task_id,
                                          std::span<const double> rows, int num_rows) {
    if (task_id < 0 || task_id >= static_cast<int>(net.tasks.size()))
        throw ContractError("evaluate: unknown task");
    const TaskIo& io = net.tasks[task_id];
    const int in_arity = static_cast<int>(io.input_slots.size());
    const int out_arity = static_cast<int>(io.output_slots.size());
    if (num_rows < 0 || static_cast<int>(rows.size()) != num_rows * in_arity)
        throw ContractError("evaluate_batch: row shape mismatch");

    const std::size_t n = net.nodes.size();
    std::vector<double> values(n * static_cast<std::size_t>(num_rows), 0.0);
    for (int k = 0; k < in_arity; ++k) {
        double* dst = values.data() + static_cast<std::size_t>(io.input_slots[k]) * num_rows;
        for (int r = 0; r < num_rows; ++r) dst[r] = rows[static_cast<std::size_t>(r) * in_arity + k];
    }
    for (std::size_t slot = 0; slot < n; ++slot) {
        const WiredNode& node = net.nodes[slot];
        if (node.kind == SomaKind::input) continue;
        double* dst = values.data() + slot * num_rows;
        for (int r = 0; r < num_rows; ++r) dst[r] = node.bias;
        for (const WiredConnection& c : node.in) {
            const double* src = values.data() + static_cast<std::size_t>(c.source) * num_rows;
            for (int r = 0; r < num_rows; ++r) dst[r] += c.weight * src[r];
        }
        for (int r = 0; r < num_rows; ++r) dst[r] = std::tanh(dst[r]);
    }
    std::vector<double> out(static_cast<std::size_t>(num_rows) * out_arity);
    for (int k = 0; k < out_arity; ++k) {
        const double* src = values.data() + static_cast<std::size_t>(io.output_slots[k]) * num_rows;
        for (int r = 0; r < num_rows; ++r) out[static_cast<std::size_t>(r) * out_arity + k] = src[r];
    }
    return out;
}

// Ancestor closure of one task's output somas (plus the task's input somas,
// which are part of its interface). Test oracle for the masked-input path;
// production evaluation never extracts subnetworks.
inline WiredNetwork trace_subnetwork(const WiredNetwork& net, int task_id) {
    if (task_id < 0 || task_id >= static_cast<int>(net.tasks.size()))
        throw ContractError("trace_subnetwork: unknown task");
    const TaskIo& io = net.tasks[task_id];
    std::vector<char> keep(net.nodes.size(), 0);
    std::vector<int> stack;
    for (int slot : io.output_slots) stack.push_back(slot);
    while (!stack.empty()) {
        const int slot = stack.back();
        stack.pop_back();
        if (keep[slot]) continue;
        keep[slot] = 1;
        for (const WiredConnection& c : net.nodes[slot].in) stack.push_back(c.source);
    }
    for (int slot : io.input_slots) keep[slot] = 1;

    WiredNetwork sub;
    std::vector<int> new_slot(net.nodes.size(), -1);
    for (std::size_t slot = 0; slot < net.nodes.size(); ++slot) {
        if (!keep[slot]) continue;
        new_slot[slot] = static_cast<int>(sub.nodes.size());
        sub.nodes.push_back(net.nodes[slot]);
    }
    for (WiredNode& node : sub.nodes)
        for (WiredConnection& c : node.in) c.source = new_slot[c.source];
    TaskIo sub_io;
    sub_io.name = io.name;
    for (int slot : io.input_slots) sub_io.input_slots.push_back(new_slot[slot]);
    for (int slot : io.output_slots) sub_io.output_slots.push_back(new_slot[slot]);
    sub.tasks.push_back(std::move(sub_io));
    return sub;
}

}  // namespace devann
