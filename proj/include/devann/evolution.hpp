#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "devann/errors.hpp"
#include "devann/fitness.hpp"
#include "devann/json_io.hpp"
#include "devann/parallel.hpp"
#include "devann/rng.hpp"

namespace devann {

struct Individual {
    Genotype genotype;
    std::optional<FitnessReport> fitness;
    EvalSeeds seeds;  // the seeds that produced `fitness`, kept for replay
};

struct Population {
    std::vector<Individual> members;
};

struct EvolutionConfig {
    int generations = 100;
    int population_size = 10;
    double mutation_rate = 0.05;
    bool elite_reeval = false;  // when false the parent keeps its cached score
    std::uint64_t seed = 1;
    int workers = 1;           // 0 = one thread per core
    int checkpoint_every = 0;  // 0 = no checkpoints
    std::string checkpoint_path = "checkpoint";
};

// Highest total wins; ties go to the lowest index so reruns agree.
inline int select_elite(const Population& pop) {
    if (pop.members.empty()) throw ContractError("select_elite: empty population");
    int best = -1;
    for (int i = 0; i < static_cast<int>(pop.members.size()); ++i) {
        if (!pop.members[i].fitness)
            throw ContractError("select_elite: individual " + std::to_string(i) + " not evaluated");
        if (best < 0 || pop.members[i].fitness->total > pop.members[best].fitness->total) best = i;
    }
    return best;
}

// (1+lambda) reproduction: the elite survives at index 0, every other slot is
// a fresh mutant of it. Clearing the elite's cache is what forces re-scoring.
inline Population next_generation(const Population& pop, const EvolutionConfig& cfg, Rng& rng) {
    const int elite = select_elite(pop);
    Population next;
    next.members.reserve(pop.members.size());
    Individual survivor = pop.members[elite];
    if (cfg.elite_reeval) survivor.fitness.reset();
    next.members.push_back(std::move(survivor));
    for (std::size_t i = 1; i < pop.members.size(); ++i) {
        Individual mutant;
        mutant.genotype.soma_genome =
            mutate(pop.members[elite].genotype.soma_genome, cfg.mutation_rate, rng);
        mutant.genotype.dendrite_genome =
            mutate(pop.members[elite].genotype.dendrite_genome, cfg.mutation_rate, rng);
        next.members.push_back(std::move(mutant));
    }
    return next;
}

struct GenerationRecord {
    int generation = 0;
    double best_total = 0.0;
    double mean_total = 0.0;
    double best_cartpole = 0.0;
    double best_classification = 0.0;

    friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

struct RunResult {
    std::vector<GenerationRecord> records;  // one per generation, 1..G
    Genotype elite;                         // winner of the final generation
    FitnessReport elite_fitness;
    EvalSeeds elite_seeds;
};

using GenerationCallback = std::function<void(const GenerationRecord&)>;

// One full evolutionary run. Every random decision is derived from cfg.seed
// through fixed stream tags, so results do not depend on worker count or on
// how the scheduler interleaves evaluations.
inline RunResult run_evolution(const EvolutionConfig& cfg, const SimConfig& sim,
                               const GenerationCallback& on_generation = {},
                               Brain* elite_brain = nullptr) {
    if (cfg.generations < 1) throw ConfigError("run_evolution: generations must be >= 1");
    if (cfg.population_size < 1) throw ConfigError("run_evolution: population_size must be >= 1");
    if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0)
        throw ConfigError("run_evolution: mutation_rate must be in [0, 1]");
    if (cfg.checkpoint_every < 0)
        throw ConfigError("run_evolution: checkpoint_every must be >= 0");

    Population pop;
    pop.members.resize(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i) {
        Rng init_rng(derive_seed(cfg.seed, stream::init, static_cast<std::uint64_t>(i)));
        pop.members[i].genotype = random_genotype(sim.genome_length, init_rng);
    }

    RunResult result;
    result.records.reserve(cfg.generations);
    for (int gen = 1; gen <= cfg.generations; ++gen) {
        std::vector<std::uint64_t> episode_seeds;
        if (sim.cartpole_enabled) {
            episode_seeds.reserve(sim.eval_episodes);
            for (int k = 0; k < sim.eval_episodes; ++k)
                episode_seeds.push_back(derive_seed(cfg.seed, stream::episode,
                                                    static_cast<std::uint64_t>(gen),
                                                    static_cast<std::uint64_t>(k)));
        }

        std::vector<int> pending;
        for (int i = 0; i < cfg.population_size; ++i)
            if (!pop.members[i].fitness) pending.push_back(i);
        parallel_for(static_cast<int>(pending.size()), cfg.workers, [&](int t) {
            const int i = pending[t];
            EvalSeeds seeds;
            seeds.individual = derive_seed(cfg.seed, stream::eval, static_cast<std::uint64_t>(gen),
                                           static_cast<std::uint64_t>(i));
            seeds.episodes = episode_seeds;
            pop.members[i].fitness = evaluate_individual(pop.members[i].genotype, sim, seeds);
            pop.members[i].seeds = std::move(seeds);
        });

        const int elite = select_elite(pop);
        GenerationRecord rec;
        rec.generation = gen;
        rec.best_total = pop.members[elite].fitness->total;
        rec.best_cartpole = pop.members[elite].fitness->cartpole;
        rec.best_classification = pop.members[elite].fitness->classification;
        double total_sum = 0.0;
        for (const Individual& m : pop.members) total_sum += m.fitness->total;
        rec.mean_total = total_sum / static_cast<double>(cfg.population_size);
        result.records.push_back(rec);
        if (on_generation) on_generation(rec);

        if (cfg.checkpoint_every > 0 && gen % cfg.checkpoint_every == 0)
            write_checkpoint(cfg.checkpoint_path + "_gen" + std::to_string(gen) + ".json", gen,
                             *pop.members[elite].fitness, pop.members[elite].genotype);

        if (gen == cfg.generations) {
            result.elite = pop.members[elite].genotype;
            result.elite_fitness = *pop.members[elite].fitness;
            result.elite_seeds = pop.members[elite].seeds;
            if (elite_brain) {
                // Replay the elite's own evaluation; determinism makes this
                // reproduce the exact brain that earned the cached score.
                const FitnessReport replay =
                    evaluate_individual(result.elite, sim, result.elite_seeds, elite_brain);
                if (!(replay == result.elite_fitness))
                    throw ContractError("run_evolution: elite replay diverged from cached fitness");
            }
        } else {
            Rng repro_rng(derive_seed(cfg.seed, stream::repro, static_cast<std::uint64_t>(gen)));
            pop = next_generation(pop, cfg, repro_rng);
        }
    }
    return result;
}

}  // namespace devann
