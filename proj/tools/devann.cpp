#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "devann/devann.hpp"

namespace {

int cmd_evolve(const std::string& config_path) {
    const devann::FullConfig cfg = devann::load_config_file(config_path);
    const devann::RunResult result =
        devann::run_evolution(cfg.evo, cfg.sim, [](const devann::GenerationRecord& r) {
            std::printf("gen %4d  best %9.3f  mean %9.3f  (cartpole %8.3f, classification %8.3f)\n",
                        r.generation, r.best_total, r.mean_total, r.best_cartpole,
                        r.best_classification);
            std::fflush(stdout);
        });
    std::printf("final best: total %.3f  cartpole %.3f  classification %.3f\n",
                result.elite_fitness.total, result.elite_fitness.cartpole,
                result.elite_fitness.classification);
    return 0;
}

int cmd_experiment(const std::string& config_path) {
    const devann::FullConfig cfg = devann::load_config_file(config_path);
    const devann::ExperimentConfig ex = devann::to_experiment(cfg);
    const auto records =
        devann::run_experiment(ex, [](const std::string& arm, int run, int done, int total) {
            std::printf("[%d/%d] arm %s run %d complete\n", done, total, arm.c_str(), run);
            std::fflush(stdout);
        });
    std::printf("wrote %zu records to %s\n", records.size(), ex.out_csv.c_str());
    return 0;
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
    const auto records = devann::read_records_csv(in_path);
    const auto summaries = devann::summarize(records);
    devann::render_plot(out_path, summaries);
    std::printf("wrote plot of %zu curve points to %s\n", summaries.size(), out_path.c_str());
    return 0;
}

int cmd_dump_brain(const std::string& config_path, const std::string& out_path) {
    const devann::FullConfig cfg = devann::load_config_file(config_path);
    devann::Brain brain;
    const devann::RunResult result = devann::run_evolution(cfg.evo, cfg.sim, {}, &brain);
    devann::write_json_file(out_path, devann::brain_to_json(brain));
    std::size_t dendrites = 0;
    for (const devann::Soma& s : brain.somas) dendrites += s.dendrites.size();
    std::printf("wrote brain (%zu somas, %zu dendrites, best total %.3f) to %s\n",
                brain.somas.size(), dendrites, result.elite_fitness.total, out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neuroevolution workbench for grown, self-adapting neural networks"};
    app.require_subcommand(1);

    std::string config_path, in_path, out_path;

    CLI::App* evolve = app.add_subcommand("evolve", "run a single evolutionary search");
    evolve->add_option("--config", config_path, "json config file")->required();

    CLI::App* experiment =
        app.add_subcommand("experiment", "run a multi-arm experiment and write a results csv");
    experiment->add_option("--config", config_path, "json config file")->required();

    CLI::App* plot = app.add_subcommand("plot", "render mean fitness curves from a results csv");
    plot->add_option("--in", in_path, "input results csv")->required();
    plot->add_option("--out", out_path, "output svg path")->required();

    CLI::App* dump =
        app.add_subcommand("dump-brain", "evolve, then dump the champion's grown network as json");
    dump->add_option("--config", config_path, "json config file")->required();
    dump->add_option("--out", out_path, "output json path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (evolve->parsed()) return cmd_evolve(config_path);
        if (experiment->parsed()) return cmd_experiment(config_path);
        if (plot->parsed()) return cmd_plot(in_path, out_path);
        if (dump->parsed()) return cmd_dump_brain(config_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
