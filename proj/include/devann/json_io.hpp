#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "devann/brain.hpp"
#include "devann/cgp.hpp"
#include "devann/errors.hpp"
#include "devann/fitness.hpp"

namespace devann {

using Json = nlohmann::ordered_json;

inline Json genome_to_json(const CgpGenome& g) {
    Json j;
    j["inputs"] = g.num_inputs;
    j["outputs"] = g.num_outputs;
    Json nodes = Json::array();
    for (const NodeGene& n : g.nodes) nodes.push_back(Json::array({n.function_id, n.in_a, n.in_b}));
    j["nodes"] = std::move(nodes);
    j["output_genes"] = g.output_genes;
    return j;
}

inline CgpGenome genome_from_json(const Json& j) {
    if (!j.is_object()) throw LoadError("genome json: expected an object");
    CgpGenome g;
    try {
        g.num_inputs = j.at("inputs").get<int>();
        g.num_outputs = j.at("outputs").get<int>();
        for (const Json& n : j.at("nodes")) {
            if (!n.is_array() || n.size() != 3)
                throw LoadError("genome json: each node must be [function, in_a, in_b]");
            g.nodes.push_back({n[0].get<int>(), n[1].get<int>(), n[2].get<int>()});
        }
        g.output_genes = j.at("output_genes").get<std::vector<int>>();
    } catch (const Json::exception& e) {
        throw LoadError(std::string("genome json: ") + e.what());
    }
    try {
        validate_genome(g);
    } catch (const ConfigError& e) {
        throw LoadError(std::string("genome json: ") + e.what());
    }
    return g;
}

inline Json genotype_to_json(const Genotype& g) {
    Json j;
    j["soma_genome"] = genome_to_json(g.soma_genome);
    j["dendrite_genome"] = genome_to_json(g.dendrite_genome);
    return j;
}

inline Genotype genotype_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("soma_genome") || !j.contains("dendrite_genome"))
        throw LoadError("genotype json: expected {soma_genome, dendrite_genome}");
    Genotype g;
    g.soma_genome = genome_from_json(j.at("soma_genome"));
    g.dendrite_genome = genome_from_json(j.at("dendrite_genome"));
    return g;
}

inline Json fitness_to_json(const FitnessReport& f) {
    Json j;
    j["cartpole"] = f.cartpole;
    j["classification"] = f.classification;
    j["total"] = f.total;
    return j;
}

inline Json brain_to_json(const Brain& brain) {
    Json somas = Json::array();
    Json dendrites = Json::array();
    for (const Soma& s : brain.somas) {
        Json js;
        js["id"] = s.id;
        js["kind"] = to_string(s.kind);
        js["x"] = s.x;
        js["y"] = s.y;
        js["health"] = s.health;
        js["bias"] = s.bias;
        somas.push_back(std::move(js));
        for (const Dendrite& d : s.dendrites) {
            Json jd;
            jd["mother"] = s.id;
            jd["x"] = d.x;
            jd["y"] = d.y;
            jd["weight"] = d.weight;
            jd["health"] = d.health;
            dendrites.push_back(std::move(jd));
        }
    }
    Json j;
    j["somas"] = std::move(somas);
    j["dendrites"] = std::move(dendrites);
    return j;
}

namespace detail {
inline void ensure_parent_dir(const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);  // errors surface at open time
    }
}
}  // namespace detail

inline void write_json_file(const std::string& path, const Json& j) {
    detail::ensure_parent_dir(path);
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw LoadError("write failed: " + path);
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw LoadError(path + ": " + e.what());
    }
}

inline void write_checkpoint(const std::string& path, int generation, const FitnessReport& fitness,
                             const Genotype& genotype) {
    Json j;
    j["generation"] = generation;
    j["fitness"] = fitness_to_json(fitness);
    j["genotype"] = genotype_to_json(genotype);
    write_json_file(path, j);
}

}  // namespace devann
