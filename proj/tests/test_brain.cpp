#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "devann/brain.hpp"
#include "devann/json_io.hpp"
#include "devann/rng.hpp"

using namespace devann;

namespace {

// Forces a value through memory so the compiler cannot constant-fold libm
// calls on it; folded tanh (MPFR) can differ from runtime tanh by 1 ulp.
double rt(double v) {
    volatile double x = v;
    return x;
}

std::vector<TaskSpec> two_tasks() {
    return {{"cartpole", 4, 1}, {"classification", 4, 1}};
}

// Programs that copy their inputs straight through: soma keeps x, y, health,
// bias; dendrite keeps x, y, weight, health.
Genotype identity_genotype() {
    Genotype g;
    g.soma_genome.num_inputs = kSomaProgramInputs;
    g.soma_genome.num_outputs = kSomaProgramOutputs;
    g.soma_genome.output_genes = {0, 1, 2, 3};
    g.dendrite_genome.num_inputs = kDendriteProgramInputs;
    g.dendrite_genome.num_outputs = kDendriteProgramOutputs;
    g.dendrite_genome.output_genes = {2, 3, 4, 5};
    return g;
}

// Identity, except the soma program pins health to a constant function.
Genotype soma_health_genotype(int health_fn) {
    Genotype g = identity_genotype();
    g.soma_genome.nodes = {{health_fn, 0, 0}};
    g.soma_genome.output_genes = {0, 1, kSomaProgramInputs, 3};
    return g;
}

// Identity, except the dendrite program pins dendrite health to a constant.
Genotype dendrite_health_genotype(int health_fn) {
    Genotype g = identity_genotype();
    g.dendrite_genome.nodes = {{health_fn, 0, 0}};
    g.dendrite_genome.output_genes = {2, 3, 4, kDendriteProgramInputs};
    return g;
}

Soma make_soma(int id, SomaKind kind, double x, double y, double bias = 0.0,
               std::vector<Dendrite> dendrites = {}) {
    Soma s;
    s.id = id;
    s.kind = kind;
    s.x = x;
    s.y = y;
    s.bias = bias;
    s.dendrites = std::move(dendrites);
    return s;
}

Brain random_developed_brain(std::uint64_t seed, int cycles) {
    Rng rng(derive_seed(seed, stream::init, 0));
    const Genotype g = random_genotype(32, rng);
    const CompiledGenotype programs = compile(g);
    const std::vector<TaskSpec> specs = two_tasks();
    Brain brain = init_brain(specs, BrainSettings{}, rng);
    develop(brain, programs, cycles, DevParams{}, rng);
    return brain;
}

}  // namespace

TEST_CASE("initial brain: interface somas on the left and right walls") {
    Rng rng(derive_seed(1, stream::init, 0));
    const std::vector<TaskSpec> specs = two_tasks();
    const Brain brain = init_brain(specs, BrainSettings{}, rng);

    REQUIRE(brain.somas.size() == 10);  // 8 inputs + 2 outputs
    REQUIRE(hidden_count(brain) == 0);
    REQUIRE(brain.next_id == 10);

    for (int i = 0; i < 8; ++i) {
        const Soma& s = brain.somas[i];
        REQUIRE(s.id == i);
        REQUIRE(s.kind == SomaKind::input);
        REQUIRE(s.x == -1.0);
        REQUIRE(s.y == -1.0 + (2.0 * i + 1.0) / 8.0);
        REQUIRE(s.health == 0.5);
        REQUIRE(s.bias == 0.0);
        REQUIRE(s.dendrites.empty());
    }
    for (int o = 0; o < 2; ++o) {
        const Soma& s = brain.somas[8 + o];
        REQUIRE(s.id == 8 + o);
        REQUIRE(s.kind == SomaKind::output);
        REQUIRE(s.x == 1.0);
        REQUIRE(s.y == (o == 0 ? -0.5 : 0.5));
        REQUIRE(s.health == 0.5);
        REQUIRE(s.dendrites.size() == 4);
        for (const Dendrite& d : s.dendrites) {
            REQUIRE(d.health == 0.5);
            REQUIRE((d.x >= -1.0 && d.x <= 1.0));
            REQUIRE((d.y >= -1.0 && d.y <= 1.0));
            REQUIRE((d.weight >= -1.0 && d.weight <= 1.0));
        }
    }

    REQUIRE(brain.tasks.size() == 2);
    REQUIRE(brain.tasks[0].name == "cartpole");
    REQUIRE(brain.tasks[0].input_ids == std::vector<int>{0, 1, 2, 3});
    REQUIRE(brain.tasks[0].output_ids == std::vector<int>{8});
    REQUIRE(brain.tasks[1].name == "classification");
    REQUIRE(brain.tasks[1].input_ids == std::vector<int>{4, 5, 6, 7});
    REQUIRE(brain.tasks[1].output_ids == std::vector<int>{9});
}

TEST_CASE("initial brain is a pure function of the seed") {
    Rng a(derive_seed(7, stream::init, 0)), b(derive_seed(7, stream::init, 0));
    Rng c(derive_seed(8, stream::init, 0));
    const std::vector<TaskSpec> specs = two_tasks();
    const Brain ba = init_brain(specs, BrainSettings{}, a);
    const Brain bb = init_brain(specs, BrainSettings{}, b);
    const Brain bc = init_brain(specs, BrainSettings{}, c);
    REQUIRE(ba == bb);
    REQUIRE_FALSE(ba == bc);
}

TEST_CASE("init rejects tasks without inputs or outputs") {
    Rng rng(1);
    const std::vector<TaskSpec> no_in = {{"t", 0, 1}};
    const std::vector<TaskSpec> no_out = {{"t", 2, 0}};
    REQUIRE_THROWS_AS(init_brain(no_in, BrainSettings{}, rng), ConfigError);
    REQUIRE_THROWS_AS(init_brain(no_out, BrainSettings{}, rng), ConfigError);
}

TEST_CASE("compile enforces the 8-in/4-out program interface") {
    REQUIRE_NOTHROW(compile(identity_genotype()));
    Genotype bad = identity_genotype();
    bad.soma_genome.num_inputs = 6;
    bad.soma_genome.output_genes = {0, 1, 2, 3};
    REQUIRE_THROWS_AS(compile(bad), ConfigError);
    bad = identity_genotype();
    bad.dendrite_genome.num_outputs = 3;
    bad.dendrite_genome.output_genes = {2, 3, 4};
    REQUIRE_THROWS_AS(compile(bad), ConfigError);
}

TEST_CASE("identity programs are a development fixed point") {
    Rng rng(derive_seed(42, stream::init, 0));
    const std::vector<TaskSpec> specs = two_tasks();
    const Brain before = init_brain(specs, BrainSettings{}, rng);
    const CompiledGenotype programs = compile(identity_genotype());

    Brain brain = before;
    Rng dev_rng(derive_seed(42, stream::eval, 0));
    Rng untouched(derive_seed(42, stream::eval, 0));
    develop(brain, programs, 10, DevParams{}, dev_rng);
    REQUIRE(brain == before);
    // no birth or death fired, so the structural rng was never consumed
    REQUIRE(dev_rng == untouched);
}

TEST_CASE("soma program reads the mean weight and health of its dendrites") {
    // bias' copies program input 4 (mean dendrite weight)
    Genotype g = identity_genotype();
    g.soma_genome.output_genes = {0, 1, 2, 4};
    const CompiledGenotype programs = compile(g);

    Brain brain;
    brain.tasks = {{"t", {0}, {1}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, 0.0));
    brain.somas.push_back(
        make_soma(1, SomaKind::output, 1.0, 0.0, -0.9,
                  {{-0.5, 0.0, 0.3, 0.5}, {-0.5, 0.5, 0.5, 0.5}}));
    brain.next_id = 2;

    Rng rng(1);
    development_step(brain, programs, DevParams{}, rng);
    REQUIRE(brain.somas[1].bias == (0.3 + 0.5) / 2.0);

    // a soma with no dendrites reports zero means
    Brain bare;
    bare.tasks = {{"t", {0}, {1}}};
    bare.somas.push_back(make_soma(0, SomaKind::input, -1.0, 0.0));
    bare.somas.push_back(make_soma(1, SomaKind::output, 1.0, 0.0, -0.9));
    bare.next_id = 2;
    development_step(bare, programs, DevParams{}, rng);
    REQUIRE(bare.somas[1].bias == 0.0);
}

TEST_CASE("healthy somas replicate up to the cap; parents reset to 0.5") {
    Rng rng(derive_seed(9, stream::init, 0));
    BrainSettings settings;
    settings.soma_cap = 5;
    const std::vector<TaskSpec> specs = two_tasks();
    Brain brain = init_brain(specs, settings, rng);
    const CompiledGenotype grow = compile(soma_health_genotype(cgp_fn::one));

    develop(brain, grow, 8, DevParams{}, rng);
    REQUIRE(hidden_count(brain) == 5);
    REQUIRE(brain.somas.size() == 10 + 5);

    std::set<int> ids;
    for (const Soma& s : brain.somas) {
        REQUIRE(ids.insert(s.id).second);  // ids stay unique
        REQUIRE((s.x >= -1.0 && s.x <= 1.0));
        REQUIRE((s.y >= -1.0 && s.y <= 1.0));
        if (s.kind == SomaKind::input) {
            REQUIRE(s.health == 0.5);  // inputs never develop
        } else {
            // the final birth/death pass reset every parent to 0.5; children
            // are born at 0.5 as well, and the program pins the rest to 1
            REQUIRE((s.health == 0.5 || s.health == 1.0));
        }
    }

    // killing program: every hidden soma dies, interface somas survive
    const CompiledGenotype kill = compile(soma_health_genotype(cgp_fn::zero));
    development_step(brain, kill, DevParams{}, rng);
    REQUIRE(hidden_count(brain) == 0);
    REQUIRE(brain.somas.size() == 10);
}

TEST_CASE("threshold comparisons are strict at both ends") {
    const CompiledGenotype identity = compile(identity_genotype());
    DevParams dev;  // death 0.2, birth 0.8

    Brain brain;
    brain.tasks = {{"t", {0}, {1}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, 0.0));
    brain.somas.push_back(make_soma(1, SomaKind::output, 1.0, 0.0));
    Soma on_birth = make_soma(2, SomaKind::hidden, 0.0, 0.0);
    on_birth.health = 0.8;  // exactly at the birth threshold: no birth
    Soma on_death = make_soma(3, SomaKind::hidden, 0.0, 0.5);
    on_death.health = 0.2;  // exactly at the death threshold: no death
    brain.somas.push_back(on_birth);
    brain.somas.push_back(on_death);
    brain.next_id = 4;

    Rng rng(1);
    apply_birth_death(brain, dev, rng);
    REQUIRE(brain.somas.size() == 4);
    REQUIRE(hidden_count(brain) == 2);
}

TEST_CASE("newborn somas do not reproduce within the same pass") {
    Brain brain;
    brain.tasks = {{"t", {0}, {1}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, 0.0));
    brain.somas.push_back(make_soma(1, SomaKind::output, 1.0, 0.0));
    Soma fertile = make_soma(2, SomaKind::hidden, 0.0, 0.0);
    fertile.health = 0.95;
    brain.somas.push_back(fertile);
    brain.next_id = 3;

    Rng rng(1);
    apply_birth_death(brain, DevParams{}, rng);
    REQUIRE(hidden_count(brain) == 2);  // one parent, one child — no chain
    REQUIRE(brain.somas[2].health == 0.5);
    REQUIRE(brain.somas[3].health == 0.5);
    REQUIRE(brain.somas[3].id == 3);
    // child position stays within jitter range of the parent
    REQUIRE(std::abs(brain.somas[3].x - 0.0) <= 0.1);
    REQUIRE(std::abs(brain.somas[3].y - 0.0) <= 0.1);
}

TEST_CASE("dead somas are removed before births are considered") {
    Brain brain;
    brain.tasks = {{"t", {0}, {1}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, 0.0));
    brain.somas.push_back(make_soma(1, SomaKind::output, 1.0, 0.0));
    Soma dying = make_soma(2, SomaKind::hidden, 0.0, 0.0);
    dying.health = 0.1;
    Soma fertile = make_soma(3, SomaKind::hidden, 0.2, 0.2);
    fertile.health = 0.9;
    brain.somas.push_back(dying);
    brain.somas.push_back(fertile);
    brain.next_id = 4;
    brain.soma_cap = 2;  // freed by the death, then used by the birth

    Rng rng(1);
    apply_birth_death(brain, DevParams{}, rng);
    REQUIRE(hidden_count(brain) == 2);
    std::set<int> ids;
    for (const Soma& s : brain.somas) ids.insert(s.id);
    REQUIRE(ids == std::set<int>{0, 1, 3, 4});  // 2 died, 4 was born
}

TEST_CASE("healthy dendrites replicate up to max_dendrites") {
    Rng rng(derive_seed(10, stream::init, 0));
    BrainSettings settings;
    settings.init_dendrites_per_output = 2;
    settings.max_dendrites = 6;
    const std::vector<TaskSpec> specs = two_tasks();
    Brain brain = init_brain(specs, settings, rng);
    const CompiledGenotype grow = compile(dendrite_health_genotype(cgp_fn::one));

    develop(brain, grow, 5, DevParams{}, rng);
    for (const Soma& s : brain.somas) {
        if (s.kind != SomaKind::output) continue;
        REQUIRE(s.dendrites.size() == 6);
        for (const Dendrite& d : s.dendrites) {
            REQUIRE((d.x >= -1.0 && d.x <= 1.0));
            REQUIRE((d.y >= -1.0 && d.y <= 1.0));
        }
    }

    const CompiledGenotype kill = compile(dendrite_health_genotype(cgp_fn::zero));
    development_step(brain, kill, DevParams{}, rng);
    for (const Soma& s : brain.somas) REQUIRE(s.dendrites.empty());
}

TEST_CASE("nearest-left wiring on a worked example") {
    Brain brain;
    brain.tasks = {{"t", {0, 1}, {2}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, -0.5));
    brain.somas.push_back(make_soma(1, SomaKind::input, -1.0, 0.5));
    brain.somas.push_back(make_soma(2, SomaKind::output, 1.0, 0.0, -0.1,
                                    {{0.3, 0.1, 0.7, 0.5},     // -> hidden
                                     {1.0, 0.0, 9.0, 0.5},     // at mother x: pruned
                                     {-1.0, 0.0, 9.0, 0.5}})); // nothing to its left
    brain.somas.push_back(make_soma(3, SomaKind::hidden, 0.1, 0.0, 0.25,
                                    {{-0.5, 0.25, 0.3, 0.5}}));
    brain.next_id = 4;

    const WiredNetwork net = wire(brain);
    REQUIRE(net.nodes.size() == 4);
    // ascending (x, id): inputs, hidden at 0.1, output at 1
    REQUIRE(net.nodes[0].soma_id == 0);
    REQUIRE(net.nodes[1].soma_id == 1);
    REQUIRE(net.nodes[2].soma_id == 3);
    REQUIRE(net.nodes[3].soma_id == 2);

    // hidden's dendrite at (-0.5, 0.25): d2 to input A = 0.25 + 0.5625,
    // to input B = 0.25 + 0.0625 -> B
    REQUIRE(net.nodes[2].in.size() == 1);
    REQUIRE(net.nodes[2].in[0].source == 1);
    REQUIRE(net.nodes[2].in[0].weight == 0.3);

    // output's first dendrite: hidden wins (0.05 vs 2.05 / 1.85); the other
    // two dendrites drop out
    REQUIRE(net.nodes[3].in.size() == 1);
    REQUIRE(net.nodes[3].in[0].source == 2);
    REQUIRE(net.nodes[3].in[0].weight == 0.7);

    REQUIRE(net.tasks.size() == 1);
    REQUIRE(net.tasks[0].input_slots == std::vector<int>{0, 1});
    REQUIRE(net.tasks[0].output_slots == std::vector<int>{3});

    // forward pass, against arithmetic done right here
    const std::vector<double> in = {0.6, -0.8};
    const std::vector<double> out = evaluate(net, 0, in);
    const double hidden = std::tanh(rt(0.25) + 0.3 * rt(-0.8));
    REQUIRE(out == std::vector<double>{std::tanh(rt(-0.1) + 0.7 * hidden)});
}

TEST_CASE("wiring ties break toward smaller y, then smaller id") {
    Brain brain;
    brain.tasks = {{"t", {0, 1}, {2}}, {"u", {1}, {5}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, -0.5));
    brain.somas.push_back(make_soma(1, SomaKind::input, -1.0, 0.5));
    brain.somas.push_back(make_soma(2, SomaKind::output, 1.0, 0.0, 0.0,
                                    {{0.0, 0.0, 1.0, 0.5},      // equidistant A/B -> A (smaller y)
                                     {0.5, -0.3, 2.0, 0.5},     // tie H1/H2 -> H1 (smaller id)
                                     {0.9, -0.3, 3.0, 0.5}}));  // nearer output excluded -> H1
    brain.somas.push_back(make_soma(3, SomaKind::hidden, 0.0, -0.3));
    brain.somas.push_back(make_soma(4, SomaKind::hidden, 0.0, -0.3));
    brain.somas.push_back(make_soma(5, SomaKind::output, 0.7, -0.3));
    brain.next_id = 6;

    const WiredNetwork net = wire(brain);
    // slots ascending (x, id): A=0, B=1, H1=2, H2=3, O2=4, C=5
    REQUIRE(net.nodes[5].soma_id == 2);
    REQUIRE(net.nodes[5].in.size() == 3);
    REQUIRE(net.nodes[5].in[0].source == 0);  // y tie: -0.5 beats 0.5
    REQUIRE(net.nodes[5].in[1].source == 2);  // id tie: 3 beats 4
    REQUIRE(net.nodes[5].in[2].source == 2);  // output soma never a source
}

TEST_CASE("evaluation masks the inputs of every other task") {
    Brain brain;
    brain.tasks = {{"a", {0}, {2}}, {"b", {1}, {3}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, -0.5));
    brain.somas.push_back(make_soma(1, SomaKind::input, -1.0, 0.5));
    // both outputs read from task b's input soma
    brain.somas.push_back(
        make_soma(2, SomaKind::output, 1.0, -0.5, 0.2, {{-0.9, 0.5, 0.8, 0.5}}));
    brain.somas.push_back(
        make_soma(3, SomaKind::output, 1.0, 0.5, -0.3, {{-0.9, 0.5, 0.6, 0.5}}));
    brain.next_id = 4;

    const WiredNetwork net = wire(brain);
    const std::vector<double> v = {0.9};
    // task a: its own input is 0.9 but the source soma belongs to task b,
    // which is masked to zero
    REQUIRE(evaluate(net, 0, v) == std::vector<double>{std::tanh(rt(0.2))});
    // task b: the source soma carries the live value
    REQUIRE(evaluate(net, 1, v) == std::vector<double>{std::tanh(rt(-0.3) + 0.6 * rt(0.9))});

    const std::vector<double> wrong = {0.9, 0.1};
    REQUIRE_THROWS_AS(evaluate(net, 0, wrong), ContractError);
    REQUIRE_THROWS_AS(evaluate(net, 7, v), ContractError);
}

TEST_CASE("masked evaluation equals the traced per-task subnetwork, 100 brains") {
    for (int trial = 0; trial < 100; ++trial) {
        const Brain brain = random_developed_brain(1000 + trial, 6);
        const WiredNetwork net = wire(brain);
        Rng rng(derive_seed(2000, stream::eval, trial));
        for (int task = 0; task < 2; ++task) {
            const WiredNetwork sub = trace_subnetwork(net, task);
            REQUIRE(sub.nodes.size() <= net.nodes.size());
            REQUIRE(sub.tasks.size() == 1);
            for (int rep = 0; rep < 3; ++rep) {
                std::vector<double> in;
                for (int k = 0; k < 4; ++k) in.push_back(uniform_range(rng, -1.0, 1.0));
                REQUIRE(evaluate(net, task, in) == evaluate(sub, 0, in));
            }
        }
    }
}

TEST_CASE("grown brains keep every structural invariant, 1000 brains") {
    for (int trial = 0; trial < 1000; ++trial) {
        const Brain brain = random_developed_brain(5000 + trial, 4);
        REQUIRE(hidden_count(brain) <= brain.soma_cap);
        std::set<int> ids;
        for (const Soma& s : brain.somas) {
            REQUIRE(ids.insert(s.id).second);
            REQUIRE(s.id < brain.next_id);
            REQUIRE((s.x >= -1.0 && s.x <= 1.0));
            REQUIRE((s.y >= -1.0 && s.y <= 1.0));
            REQUIRE((s.health >= -1.0 && s.health <= 1.0));
            REQUIRE((s.bias >= -1.0 && s.bias <= 1.0));
            REQUIRE(static_cast<int>(s.dendrites.size()) <= brain.max_dendrites);
            if (s.kind == SomaKind::input) {
                REQUIRE(s.dendrites.empty());
                REQUIRE(s.x == -1.0);
                REQUIRE(s.health == 0.5);
                REQUIRE(s.bias == 0.0);
            }
            if (s.kind == SomaKind::output) REQUIRE(s.x == 1.0);
            for (const Dendrite& d : s.dendrites) {
                REQUIRE((d.x >= -1.0 && d.x <= 1.0));
                REQUIRE((d.y >= -1.0 && d.y <= 1.0));
                REQUIRE((d.weight >= -1.0 && d.weight <= 1.0));
                REQUIRE((d.health >= -1.0 && d.health <= 1.0));
            }
        }

        // wiring is feed-forward by construction: sources sit at lower slots
        const WiredNetwork net = wire(brain);
        for (std::size_t slot = 0; slot < net.nodes.size(); ++slot) {
            const WiredNode& node = net.nodes[slot];
            if (node.kind == SomaKind::input) REQUIRE(node.in.empty());
            for (const WiredConnection& c : node.in) {
                REQUIRE(c.source < static_cast<int>(slot));
                REQUIRE(net.nodes[c.source].kind != SomaKind::output);
                REQUIRE(net.nodes[c.source].x < node.x);
            }
        }
    }
}

TEST_CASE("development is reproducible from the seed") {
    const Brain a = random_developed_brain(31, 8);
    const Brain b = random_developed_brain(31, 8);
    const Brain c = random_developed_brain(32, 8);
    REQUIRE(a == b);
    REQUIRE_FALSE(a == c);
}

TEST_CASE("batched evaluation matches the scalar path bit for bit") {
    for (int trial = 0; trial < 100; ++trial) {
        const Brain brain = random_developed_brain(9000 + trial, 5);
        const WiredNetwork net = wire(brain);
        Rng rng(derive_seed(9500, stream::eval, trial));
        const int rows = 1 + static_cast<int>(uniform_below(rng, 16));
        std::vector<double> batch;
        for (int r = 0; r < rows * 4; ++r) batch.push_back(uniform_range(rng, -1.0, 1.0));
        for (int task = 0; task < 2; ++task) {
            const std::vector<double> got = evaluate_batch(net, task, batch, rows);
            REQUIRE(got.size() == static_cast<std::size_t>(rows));
            for (int r = 0; r < rows; ++r) {
                const std::vector<double> row(batch.begin() + r * 4, batch.begin() + r * 4 + 4);
                REQUIRE(got[r] == evaluate(net, task, row)[0]);
            }
        }
    }
}

TEST_CASE("evaluate_batch validates its row shape") {
    const Brain brain = random_developed_brain(77, 3);
    const WiredNetwork net = wire(brain);
    const std::vector<double> bad(7, 0.0);  // not a multiple of the arity
    REQUIRE_THROWS_AS(evaluate_batch(net, 0, bad, 2), ContractError);
    REQUIRE_THROWS_AS(evaluate_batch(net, 9, bad, 1), ContractError);
}

TEST_CASE("brain snapshot json lists somas and mother-tagged dendrites") {
    Brain brain;
    brain.tasks = {{"t", {0}, {1}}};
    brain.somas.push_back(make_soma(0, SomaKind::input, -1.0, 0.0));
    brain.somas.push_back(
        make_soma(1, SomaKind::output, 1.0, 0.25, -0.125, {{-0.5, 0.5, 0.75, 0.5}}));
    Soma h = make_soma(2, SomaKind::hidden, 0.5, -0.5, 0.0, {{0.25, 0.0, -0.5, 0.5}});
    h.health = 0.75;
    brain.somas.push_back(h);
    brain.next_id = 3;

    const Json j = brain_to_json(brain);
    REQUIRE(j.at("somas").size() == 3);
    REQUIRE(j.at("dendrites").size() == 2);
    REQUIRE(j.at("somas")[0].at("kind") == "input");
    REQUIRE(j.at("somas")[1].at("kind") == "output");
    REQUIRE(j.at("somas")[2].at("kind") == "hidden");
    REQUIRE(j.at("somas")[2].at("id") == 2);
    REQUIRE(j.at("somas")[2].at("health") == 0.75);
    REQUIRE(j.at("somas")[2].at("x") == 0.5);
    REQUIRE(j.at("dendrites")[0].at("mother") == 1);
    REQUIRE(j.at("dendrites")[0].at("weight") == 0.75);
    REQUIRE(j.at("dendrites")[1].at("mother") == 2);
    REQUIRE(j.at("dendrites")[1].at("x") == 0.25);
}
