#pragma once

// Cartesian Genetic Programming: integer-gene encoding of feed-forward
// function graphs, used here as the developmental rules for somas and
// dendrites. Genomes and decoded programs are immutable values; mutation
// returns a fresh genome.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "devann/errors.hpp"
#include "devann/rng.hpp"

namespace devann {

inline double clamp_unit(double v) { return std::max(-1.0, std::min(1.0, v)); }

// Function set: closed on [-1,1], binary results hard-clamped.
namespace cgp_fn {
inline constexpr int add = 0;
inline constexpr int sub = 1;
inline constexpr int mult = 2;
inline constexpr int div = 3;  // protected: returns numerator for tiny denominators
inline constexpr int abs = 4;
inline constexpr int neg = 5;
inline constexpr int min = 6;
inline constexpr int max = 7;
inline constexpr int step = 8;  // 1 if a > 0 else -1
inline constexpr int tanh = 9;
inline constexpr int one = 10;
inline constexpr int zero = 11;
inline constexpr int count = 12;

inline constexpr double div_epsilon = 1e-6;

inline int arity(int fn) {
    switch (fn) {
        case add: case sub: case mult: case div: case min: case max:
            return 2;
        case abs: case neg: case step: case tanh:
            return 1;
        default:
            return 0;
    }
}

inline double apply(int fn, double a, double b) {
    switch (fn) {
        case add: return clamp_unit(a + b);
        case sub: return clamp_unit(a - b);
        case mult: return clamp_unit(a * b);
        case div: return std::fabs(b) < div_epsilon ? a : clamp_unit(a / b);
        case abs: return std::fabs(a);
        case neg: return -a;
        case min: return std::min(a, b);
        case max: return std::max(a, b);
        case step: return a > 0.0 ? 1.0 : -1.0;
        case tanh: return std::tanh(a);
        case one: return 1.0;
        default: return 0.0;
    }
}
}  // namespace cgp_fn

// One node gene. Unary and nullary functions keep their unused connection
// genes (silent-gene semantics).
struct NodeGene {
    int function_id = 0;
    int in_a = 0;
    int in_b = 0;
    bool operator==(const NodeGene&) const = default;
};

struct CgpGenome {
    int num_inputs = 0;
    int num_outputs = 0;
    std::vector<NodeGene> nodes;
    std::vector<int> output_genes;  // source index: input i, or num_inputs + node j
    bool operator==(const CgpGenome&) const = default;
};

// Two developmental programs make one heritable individual.
struct Genotype {
    CgpGenome soma_genome;
    CgpGenome dendrite_genome;
    bool operator==(const Genotype&) const = default;
};

// Throws ConfigError if the genome breaks any structural invariant.
inline void validate_genome(const CgpGenome& g) {
    if (g.num_inputs < 1 || g.num_outputs < 1)
        throw ConfigError("cgp genome: arities must be >= 1");
    if (static_cast<int>(g.output_genes.size()) != g.num_outputs)
        throw ConfigError("cgp genome: output gene count != num_outputs");
    const int n = static_cast<int>(g.nodes.size());
    for (int i = 0; i < n; ++i) {
        const NodeGene& node = g.nodes[i];
        if (node.function_id < 0 || node.function_id >= cgp_fn::count)
            throw ConfigError("cgp genome: function id out of range at node " +
                              std::to_string(i));
        const int limit = g.num_inputs + i;  // feed-forward by construction
        if (node.in_a < 0 || node.in_a >= limit || node.in_b < 0 || node.in_b >= limit)
            throw ConfigError("cgp genome: connection out of range at node " +
                              std::to_string(i));
    }
    for (int src : g.output_genes)
        if (src < 0 || src >= g.num_inputs + n)
            throw ConfigError("cgp genome: output gene out of range");
}

inline CgpGenome random_genome(int num_inputs, int num_outputs, int genome_length,
                               Rng& rng) {
    if (num_inputs < 1 || num_outputs < 1)
        throw ConfigError("random_genome: arities must be >= 1");
    if (genome_length < 1)
        throw ConfigError("random_genome: genome length must be >= 1");
    CgpGenome g;
    g.num_inputs = num_inputs;
    g.num_outputs = num_outputs;
    g.nodes.resize(genome_length);
    for (int i = 0; i < genome_length; ++i) {
        const int limit = num_inputs + i;
        g.nodes[i].function_id = static_cast<int>(uniform_below(rng, cgp_fn::count));
        g.nodes[i].in_a = static_cast<int>(uniform_below(rng, limit));
        g.nodes[i].in_b = static_cast<int>(uniform_below(rng, limit));
    }
    g.output_genes.resize(num_outputs);
    for (int k = 0; k < num_outputs; ++k)
        g.output_genes[k] = static_cast<int>(uniform_below(rng, num_inputs + genome_length));
    return g;
}

// A decoded program: only the nodes reachable from the output genes, in
// genome order (which is already topological). Slot space: inputs occupy
// slots [0, num_inputs), the k-th active node slot num_inputs + k.
struct ActiveNode {
    int function_id;
    int a;  // slot index
    int b;  // slot index (meaningful only for binary functions)
};

struct ActiveProgram {
    int num_inputs = 0;
    int num_outputs = 0;
    std::vector<ActiveNode> nodes;
    std::vector<int> output_slots;

    int num_slots() const { return num_inputs + static_cast<int>(nodes.size()); }
};

inline ActiveProgram decode(const CgpGenome& g) {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<char> active(n, 0);
    // Reachability over the connections each function actually reads.
    std::vector<int> stack;
    auto push_src = [&](int src) {
        if (src >= g.num_inputs) stack.push_back(src - g.num_inputs);
    };
    for (int src : g.output_genes) push_src(src);
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        if (active[i]) continue;
        active[i] = 1;
        const NodeGene& node = g.nodes[i];
        const int ar = cgp_fn::arity(node.function_id);
        if (ar >= 1) push_src(node.in_a);
        if (ar >= 2) push_src(node.in_b);
    }

    ActiveProgram p;
    p.num_inputs = g.num_inputs;
    p.num_outputs = g.num_outputs;
    std::vector<int> slot_of(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!active[i]) continue;
        const NodeGene& node = g.nodes[i];
        auto remap = [&](int src) {
            return src < g.num_inputs ? src : g.num_inputs + slot_of[src - g.num_inputs];
        };
        slot_of[i] = static_cast<int>(p.nodes.size());
        p.nodes.push_back({node.function_id, remap(node.in_a), remap(node.in_b)});
    }
    p.output_slots.reserve(g.num_outputs);
    for (int src : g.output_genes) {
        p.output_slots.push_back(src < g.num_inputs ? src
                                                    : g.num_inputs + slot_of[src - g.num_inputs]);
    }
    return p;
}

// Runs the program. `scratch` is reused between calls to keep the hot path
// allocation-free; outputs.size() must equal num_outputs.
inline void execute(const ActiveProgram& p, std::span<const double> inputs,
                    std::span<double> outputs, std::vector<double>& scratch) {
    if (static_cast<int>(inputs.size()) != p.num_inputs)
        throw ContractError("cgp execute: input arity mismatch");
    if (static_cast<int>(outputs.size()) != p.num_outputs)
        throw ContractError("cgp execute: output arity mismatch");
    scratch.resize(p.num_slots());
    std::copy(inputs.begin(), inputs.end(), scratch.begin());
    int slot = p.num_inputs;
    for (const ActiveNode& node : p.nodes) {
        scratch[slot++] = cgp_fn::apply(node.function_id, scratch[node.a],
                                        scratch[node.b]);
    }
    for (int k = 0; k < p.num_outputs; ++k) outputs[k] = scratch[p.output_slots[k]];
}

inline std::vector<double> execute(const ActiveProgram& p,
                                   std::span<const double> inputs) {
    std::vector<double> outputs(p.num_outputs);
    std::vector<double> scratch;
    execute(p, inputs, outputs, scratch);
    return outputs;
}

// Point mutation: every gene is independently resampled from its full legal
// range with probability `rate`.
inline CgpGenome mutate(const CgpGenome& g, double rate, Rng& rng) {
    CgpGenome out = g;
    const int n = static_cast<int>(out.nodes.size());
    for (int i = 0; i < n; ++i) {
        const int limit = out.num_inputs + i;
        if (chance(rng, rate))
            out.nodes[i].function_id = static_cast<int>(uniform_below(rng, cgp_fn::count));
        if (chance(rng, rate))
            out.nodes[i].in_a = static_cast<int>(uniform_below(rng, limit));
        if (chance(rng, rate))
            out.nodes[i].in_b = static_cast<int>(uniform_below(rng, limit));
    }
    for (int& src : out.output_genes) {
        if (chance(rng, rate))
            src = static_cast<int>(uniform_below(rng, out.num_inputs + n));
    }
    return out;
}

}  // namespace devann
