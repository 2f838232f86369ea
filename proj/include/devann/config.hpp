#pragma once

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "devann/dataset.hpp"
#include "devann/errors.hpp"
#include "devann/experiment.hpp"
#include "devann/json_io.hpp"

namespace devann {

// Fully parsed config file. `evo`/`sim` reflect the top-level keys; `arms`
// are those same settings with each arm's overrides merged on top.
struct FullConfig {
    EvolutionConfig evo;
    SimConfig sim;
    std::string dataset_path;
    std::string out_csv = "results.csv";
    int runs = 50;
    int workers = 1;
    std::vector<Arm> arms;
};

namespace config_detail {

// Model-level keys may also appear inside an arm object as overrides.
inline constexpr const char* kModelKeys[] = {
    "tasks",          "ad",          "ad_epochs",     "structural_updates",
    "generations",    "population_size", "mutation_rate", "genome_length",
    "dev_cycles",     "theta_birth", "theta_death",   "soma_cap",
    "max_dendrites",  "init_dendrites_per_output",    "elite_reeval",
    "eval_episodes",  "max_steps",   "checkpoint_every", "checkpoint_path",
};
// Experiment-level keys are top-level only; keeping seed/runs/out of arms is
// what guarantees seed pairing and a single shared output file.
inline constexpr const char* kTopOnlyKeys[] = {
    "seed", "workers", "runs", "arms", "out_csv", "dataset_path",
};

inline bool in_list(const std::string& key, const char* const* list, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (key == list[i]) return true;
    return false;
}

inline void check_keys(const Json& j, bool allow_top, const std::string& context) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        const bool model = in_list(key, kModelKeys, std::size(kModelKeys));
        const bool top = in_list(key, kTopOnlyKeys, std::size(kTopOnlyKeys));
        const bool name = !allow_top && key == "name";
        if (!model && !name && !(allow_top && top))
            throw ConfigError(context + ": unknown key '" + key + "'");
    }
}

inline void get_int(const Json& j, const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer())
        throw ConfigError(std::string("config key '") + key + "' must be an integer");
    out = j.at(key).get<int>();
}

inline void get_double(const Json& j, const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number())
        throw ConfigError(std::string("config key '") + key + "' must be a number");
    out = j.at(key).get<double>();
}

inline void get_bool(const Json& j, const char* key, bool& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean())
        throw ConfigError(std::string("config key '") + key + "' must be a boolean");
    out = j.at(key).get<bool>();
}

inline void get_string(const Json& j, const char* key, std::string& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string())
        throw ConfigError(std::string("config key '") + key + "' must be a string");
    out = j.at(key).get<std::string>();
}

inline void get_seed(const Json& j, const char* key, std::uint64_t& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (v.is_number_unsigned()) {
        out = v.get<std::uint64_t>();
        return;
    }
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        out = static_cast<std::uint64_t>(v.get<std::int64_t>());
        return;
    }
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
}

inline std::vector<std::string> get_string_array(const Json& j, const char* key) {
    if (!j.at(key).is_array())
        throw ConfigError(std::string("config key '") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const Json& v : j.at(key)) {
        if (!v.is_string())
            throw ConfigError(std::string("config key '") + key + "' must be an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

inline void apply_model_keys(const Json& j, EvolutionConfig& evo, SimConfig& sim) {
    if (j.contains("tasks")) {
        sim.cartpole_enabled = false;
        sim.classification_enabled = false;
        for (const std::string& t : get_string_array(j, "tasks")) {
            if (t == "cartpole")
                sim.cartpole_enabled = true;
            else if (t == "classification")
                sim.classification_enabled = true;
            else
                throw ConfigError("unknown task '" + t +
                                  "' (expected \"cartpole\" or \"classification\")");
        }
    }
    if (j.contains("ad")) {
        sim.ad.bias = sim.ad.health = sim.ad.position = false;
        for (const std::string& t : get_string_array(j, "ad")) {
            if (t == "bias")
                sim.ad.bias = true;
            else if (t == "health")
                sim.ad.health = true;
            else if (t == "position")
                sim.ad.position = true;
            else
                throw ConfigError("unknown ad target '" + t +
                                  "' (expected \"bias\", \"health\" or \"position\")");
        }
    }
    get_int(j, "ad_epochs", sim.ad.epochs);
    get_bool(j, "structural_updates", sim.ad.structural_updates);
    get_int(j, "generations", evo.generations);
    get_int(j, "population_size", evo.population_size);
    get_double(j, "mutation_rate", evo.mutation_rate);
    get_int(j, "genome_length", sim.genome_length);
    get_int(j, "dev_cycles", sim.dev_cycles);
    get_double(j, "theta_birth", sim.dev.theta_birth);
    get_double(j, "theta_death", sim.dev.theta_death);
    get_int(j, "soma_cap", sim.brain.soma_cap);
    get_int(j, "max_dendrites", sim.brain.max_dendrites);
    get_int(j, "init_dendrites_per_output", sim.brain.init_dendrites_per_output);
    get_bool(j, "elite_reeval", evo.elite_reeval);
    get_int(j, "eval_episodes", sim.eval_episodes);
    get_int(j, "max_steps", sim.cartpole.max_steps);
    get_int(j, "checkpoint_every", evo.checkpoint_every);
    get_string(j, "checkpoint_path", evo.checkpoint_path);
}

inline void validate_model(const EvolutionConfig& evo, const SimConfig& sim,
                           const std::string& context) {
    const auto fail = [&](const std::string& msg) { throw ConfigError(context + ": " + msg); };
    if (!sim.cartpole_enabled && !sim.classification_enabled) fail("'tasks' must not be empty");
    if (evo.generations < 1) fail("generations must be >= 1");
    if (evo.population_size < 1) fail("population_size must be >= 1");
    if (evo.mutation_rate < 0.0 || evo.mutation_rate > 1.0) fail("mutation_rate must be in [0, 1]");
    if (sim.genome_length < 1) fail("genome_length must be >= 1");
    if (sim.dev_cycles < 0) fail("dev_cycles must be >= 0");
    if (sim.ad.epochs < 0) fail("ad_epochs must be >= 0");
    if (sim.eval_episodes < 1) fail("eval_episodes must be >= 1");
    if (sim.cartpole.max_steps < 1) fail("max_steps must be >= 1");
    if (sim.brain.soma_cap < 0) fail("soma_cap must be >= 0");
    if (sim.brain.max_dendrites < 0) fail("max_dendrites must be >= 0");
    if (sim.brain.init_dendrites_per_output < 0) fail("init_dendrites_per_output must be >= 0");
    if (sim.brain.init_dendrites_per_output > sim.brain.max_dendrites)
        fail("init_dendrites_per_output must be <= max_dendrites");
    if (!(sim.dev.theta_death >= -1.0 && sim.dev.theta_death < sim.dev.theta_birth &&
          sim.dev.theta_birth <= 1.0))
        fail("need -1 <= theta_death < theta_birth <= 1");
    if (evo.checkpoint_every < 0) fail("checkpoint_every must be >= 0");
}

inline bool valid_arm_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        const unsigned char u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_' || c == '-' || c == '.')) return false;
    }
    return true;
}

inline bool parse_uint64(const std::string& s, std::uint64_t& out) {
    if (s.empty() || s[0] == '-' || s[0] == '+' || std::isspace(static_cast<unsigned char>(s[0])))
        return false;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return false;
    out = v;
    return true;
}

}  // namespace config_detail

inline FullConfig parse_config(const Json& root) {
    using namespace config_detail;
    if (!root.is_object()) throw ConfigError("config root must be a json object");
    check_keys(root, /*allow_top=*/true, "config");

    FullConfig cfg;
    apply_model_keys(root, cfg.evo, cfg.sim);
    validate_model(cfg.evo, cfg.sim, "config");
    get_seed(root, "seed", cfg.evo.seed);
    get_int(root, "workers", cfg.workers);
    get_int(root, "runs", cfg.runs);
    get_string(root, "out_csv", cfg.out_csv);
    get_string(root, "dataset_path", cfg.dataset_path);
    if (cfg.workers < 0) throw ConfigError("config: workers must be >= 0");
    if (cfg.runs < 1) throw ConfigError("config: runs must be >= 1");
    cfg.evo.workers = cfg.workers;

    if (root.contains("arms")) {
        if (!root.at("arms").is_array() || root.at("arms").empty())
            throw ConfigError("config key 'arms' must be a non-empty array");
        Json model_base = root;
        for (const char* key : kTopOnlyKeys) model_base.erase(key);
        for (const Json& arm_json : root.at("arms")) {
            if (!arm_json.is_object()) throw ConfigError("each arm must be a json object");
            std::string name;
            get_string(arm_json, "name", name);
            if (!valid_arm_name(name))
                throw ConfigError("each arm needs a 'name' of letters, digits, '_', '-' or '.'");
            check_keys(arm_json, /*allow_top=*/false, "arm '" + name + "'");
            Json patch = arm_json;
            patch.erase("name");
            Json merged = model_base;
            merged.merge_patch(patch);

            Arm arm;
            arm.name = name;
            apply_model_keys(merged, arm.evo, arm.sim);
            validate_model(arm.evo, arm.sim, "arm '" + name + "'");
            arm.evo.seed = cfg.evo.seed;
            arm.evo.workers = 1;
            for (const Arm& other : cfg.arms)
                if (other.name == arm.name)
                    throw ConfigError("duplicate arm name '" + arm.name + "'");
            cfg.arms.push_back(std::move(arm));
        }
    }
    return cfg;
}

// Loads the dataset once and shares it with every configuration that might
// evaluate the classification task.
inline void load_config_dataset(FullConfig& cfg) {
    bool needed = cfg.sim.classification_enabled;
    for (const Arm& arm : cfg.arms) needed = needed || arm.sim.classification_enabled;
    if (!needed) return;
    if (cfg.dataset_path.empty())
        throw ConfigError("config: dataset_path is required when the classification task is enabled");
    auto dataset = std::make_shared<const Dataset>(load_dataset(cfg.dataset_path));
    cfg.sim.dataset = dataset;
    for (Arm& arm : cfg.arms) arm.sim.dataset = dataset;
}

// DEVANN_SEED=<n> overrides the config seed without editing the file.
inline void apply_env_seed(FullConfig& cfg) {
    const char* env = std::getenv("DEVANN_SEED");
    if (!env) return;
    std::uint64_t seed = 0;
    if (!config_detail::parse_uint64(env, seed))
        throw ConfigError("DEVANN_SEED must be a non-negative integer, got '" + std::string(env) +
                          "'");
    cfg.evo.seed = seed;
    for (Arm& arm : cfg.arms) arm.evo.seed = seed;
}

inline FullConfig load_config_file(const std::string& path, bool with_env_seed = true,
                                   bool with_dataset = true) {
    const Json root = read_json_file(path);
    FullConfig cfg;
    try {
        cfg = parse_config(root);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (with_env_seed) apply_env_seed(cfg);
    if (with_dataset) load_config_dataset(cfg);
    return cfg;
}

inline ExperimentConfig to_experiment(const FullConfig& cfg) {
    if (cfg.arms.empty())
        throw ConfigError("config: experiments need an 'arms' array (one entry per condition)");
    ExperimentConfig ex;
    ex.arms = cfg.arms;
    ex.runs = cfg.runs;
    ex.base_seed = cfg.evo.seed;
    ex.out_csv = cfg.out_csv;
    ex.workers = cfg.workers;
    return ex;
}

}  // namespace devann
