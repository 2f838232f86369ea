#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "devann/brain.hpp"
#include "devann/cartpole.hpp"
#include "devann/dataset.hpp"
#include "devann/errors.hpp"
#include "devann/learning.hpp"
#include "devann/rng.hpp"

namespace devann {

// Everything needed to score one genotype, independent of the search loop.
struct SimConfig {
    int genome_length = 64;

    BrainSettings brain;
    DevParams dev;
    int dev_cycles = 10;

    AdConfig ad;

    bool cartpole_enabled = true;
    bool classification_enabled = true;
    CartpoleParams cartpole;
    int eval_episodes = 3;
    std::shared_ptr<const Dataset> dataset;  // required when classification is on

    std::vector<TaskSpec> task_specs() const {
        std::vector<TaskSpec> specs;
        if (cartpole_enabled) specs.push_back({"cartpole", 4, 1});
        if (classification_enabled) specs.push_back({"classification", Dataset::kFeatures, 1});
        return specs;
    }
    int cartpole_task_id() const { return 0; }
    int classification_task_id() const { return cartpole_enabled ? 1 : 0; }
};

struct FitnessReport {
    double cartpole = 0.0;        // mean balanced steps over the scoring episodes
    double classification = 0.0;  // 1000 * dataset accuracy
    double total = 0.0;

    friend bool operator==(const FitnessReport&, const FitnessReport&) = default;
};

// Seed bundle for one evaluation. `individual` drives growth and adaptation;
// `episodes` are the scoring episode seeds, shared by every individual of a
// generation so scores stay comparable.
struct EvalSeeds {
    std::uint64_t individual = 0;
    std::vector<std::uint64_t> episodes;
};

// Full life cycle of one candidate: grow the network, let it practice each
// enabled task for ad.epochs rounds (adaptation applies only where the mask
// says so, but the practice episodes always run so every arm does the same
// amount of work), then score the final network. If `final_brain` is non-null
// it receives the post-adaptation brain.
inline FitnessReport evaluate_individual(const Genotype& genotype, const SimConfig& cfg,
                                         const EvalSeeds& seeds, Brain* final_brain = nullptr) {
    if (!cfg.cartpole_enabled && !cfg.classification_enabled)
        throw ConfigError("evaluate_individual: no task enabled");
    if (cfg.classification_enabled && !cfg.dataset)
        throw ConfigError("evaluate_individual: classification enabled but no dataset loaded");
    if (cfg.cartpole_enabled && seeds.episodes.empty())
        throw ContractError("evaluate_individual: cartpole enabled but no episode seeds");

    const CompiledGenotype programs = compile(genotype);
    Rng rng(seeds.individual);

    const std::vector<TaskSpec> specs = cfg.task_specs();
    Brain brain = init_brain(specs, cfg.brain, rng);
    develop(brain, programs, cfg.dev_cycles, cfg.dev, rng);

    for (int epoch = 0; epoch < cfg.ad.epochs; ++epoch) {
        if (cfg.cartpole_enabled) {
            const WiredNetwork net = wire(brain);
            const int steps = run_cartpole_episode(net, cfg.cartpole_task_id(), cfg.cartpole, rng);
            const RewardSignal r = reward_from_cartpole(steps, cfg.cartpole.max_steps);
            ad_update(brain, programs, cfg.ad, r, cfg.dev, rng);
        }
        if (cfg.classification_enabled) {
            const WiredNetwork net = wire(brain);
            const auto [correct, total] =
                evaluate_classification(net, cfg.classification_task_id(), *cfg.dataset);
            const RewardSignal r = reward_from_accuracy(correct, total);
            ad_update(brain, programs, cfg.ad, r, cfg.dev, rng);
        }
    }

    const WiredNetwork net = wire(brain);
    FitnessReport report;
    if (cfg.cartpole_enabled) {
        double step_sum = 0.0;
        for (const std::uint64_t episode_seed : seeds.episodes) {
            Rng episode_rng(episode_seed);
            step_sum += run_cartpole_episode(net, cfg.cartpole_task_id(), cfg.cartpole, episode_rng);
        }
        report.cartpole = step_sum / static_cast<double>(seeds.episodes.size());
    }
    if (cfg.classification_enabled) {
        const auto [correct, total] =
            evaluate_classification(net, cfg.classification_task_id(), *cfg.dataset);
        report.classification = 1000.0 * static_cast<double>(correct) / static_cast<double>(total);
    }
    report.total = report.cartpole + report.classification;

    if (final_brain) *final_brain = std::move(brain);
    return report;
}

}  // namespace devann
