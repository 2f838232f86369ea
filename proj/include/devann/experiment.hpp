#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "devann/dataset.hpp"
#include "devann/errors.hpp"
#include "devann/evolution.hpp"
#include "devann/fitness.hpp"

namespace devann {

// One arm = one experimental condition; its sim/evo settings may differ from
// the other arms, but runs are paired across arms by sharing per-run seeds.
struct Arm {
    std::string name;
    SimConfig sim;
    EvolutionConfig evo;
};

struct ExperimentConfig {
    std::vector<Arm> arms;
    int runs = 50;
    std::uint64_t base_seed = 1;
    std::string out_csv = "results.csv";
    int workers = 1;  // parallelism across (arm, run) jobs; 0 = auto
};

struct RunRecord {
    std::string arm;
    int run = 0;
    int generation = 0;
    double best_total = 0.0;
    double mean_total = 0.0;
    double best_cartpole = 0.0;
    double best_classification = 0.0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr const char* kCsvHeader =
    "arm,run,generation,best_total,mean_total,best_cartpole,best_classification";

namespace detail {

// Shortest-faithful double formatting: %.17g round-trips every finite double.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_record(const RunRecord& r) {
    std::string line = r.arm;
    line += ',';
    line += std::to_string(r.run);
    line += ',';
    line += std::to_string(r.generation);
    line += ',';
    line += format_g17(r.best_total);
    line += ',';
    line += format_g17(r.mean_total);
    line += ',';
    line += format_g17(r.best_cartpole);
    line += ',';
    line += format_g17(r.best_classification);
    return line;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

inline bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        const long v = std::stol(s, &pos);
        if (pos != s.size()) return false;
        out = static_cast<int>(v);
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace detail

inline void write_records_csv(const std::string& path, const std::vector<RunRecord>& records) {
    detail::ensure_parent_dir(path);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw LoadError("cannot write csv: " + path);
    out << kCsvHeader << '\n';
    for (const RunRecord& r : records) out << detail::format_record(r) << '\n';
    out.flush();
    if (!out) throw LoadError("csv write failed: " + path);
}

inline std::vector<RunRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw LoadError(path + ": empty csv");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw LoadError(path + ": unexpected csv header");
    std::vector<RunRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = detail::split_csv_line(line);
        RunRecord r;
        bool ok = f.size() == 7 && !f[0].empty();
        if (ok) {
            r.arm = f[0];
            ok = detail::parse_int(f[1], r.run) && detail::parse_int(f[2], r.generation) &&
                 detail::parse_double(f[3], r.best_total) &&
                 detail::parse_double(f[4], r.mean_total) &&
                 detail::parse_double(f[5], r.best_cartpole) &&
                 detail::parse_double(f[6], r.best_classification);
        }
        if (!ok) throw LoadError(path + ": malformed csv row at line " + std::to_string(line_no));
        records.push_back(std::move(r));
    }
    return records;
}

struct CurveSummary {
    std::string arm;
    int generation = 0;
    double mean_best = 0.0;    // mean of best_total across runs
    double stderr_best = 0.0;  // sample stddev / sqrt(runs); 0 for a single run
    int runs = 0;

    friend bool operator==(const CurveSummary&, const CurveSummary&) = default;
};

// Collapses per-run curves into one mean +/- stderr curve per arm. Arms keep
// their first-appearance order; generations come out ascending.
inline std::vector<CurveSummary> summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) throw ContractError("summarize: no records");
    std::vector<std::string> arm_order;
    std::map<std::string, int> arm_index;
    for (const RunRecord& r : records) {
        if (arm_index.emplace(r.arm, static_cast<int>(arm_order.size())).second)
            arm_order.push_back(r.arm);
    }
    std::map<std::pair<int, int>, std::vector<double>> groups;  // (arm idx, gen) -> best_total
    for (const RunRecord& r : records) groups[{arm_index[r.arm], r.generation}].push_back(r.best_total);

    std::vector<CurveSummary> out;
    out.reserve(groups.size());
    for (const auto& [key, values] : groups) {
        CurveSummary s;
        s.arm = arm_order[key.first];
        s.generation = key.second;
        s.runs = static_cast<int>(values.size());
        double sum = 0.0;
        for (double v : values) sum += v;
        s.mean_best = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
            double sq = 0.0;
            for (double v : values) sq += (v - s.mean_best) * (v - s.mean_best);
            const double variance = sq / static_cast<double>(values.size() - 1);
            s.stderr_best = std::sqrt(variance / static_cast<double>(values.size()));
        }
        out.push_back(std::move(s));
    }
    return out;
}

using RunCallback =
    std::function<void(const std::string& arm, int run, int completed_jobs, int total_jobs)>;

namespace detail {

struct Job {
    int arm_index = 0;
    int run = 0;
};

inline std::vector<RunRecord> execute_job(const ExperimentConfig& cfg, const Job& job) {
    const Arm& arm = cfg.arms[job.arm_index];
    EvolutionConfig evo = arm.evo;
    evo.seed = cfg.base_seed + static_cast<std::uint64_t>(job.run);  // paired across arms
    evo.workers = 1;          // parallelism lives at the job level here
    evo.checkpoint_every = 0; // resume granularity is whole runs
    const RunResult result = run_evolution(evo, arm.sim);
    std::vector<RunRecord> records;
    records.reserve(result.records.size());
    for (const GenerationRecord& g : result.records) {
        RunRecord r;
        r.arm = arm.name;
        r.run = job.run;
        r.generation = g.generation;
        r.best_total = g.best_total;
        r.mean_total = g.mean_total;
        r.best_cartpole = g.best_cartpole;
        r.best_classification = g.best_classification;
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace detail

// Runs every (arm, run) pair that is not already complete in out_csv, writing
// each finished run's rows as it lands so an interrupted experiment can pick
// up where it left off. On success the file is rewritten in canonical order
// (arm, then run, then generation), making completed outputs byte-stable no
// matter how the work was scheduled or interrupted.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg,
                                             const RunCallback& progress = {}) {
    if (cfg.arms.empty()) throw ConfigError("run_experiment: no arms");
    if (cfg.runs < 1) throw ConfigError("run_experiment: runs must be >= 1");
    if (cfg.out_csv.empty()) throw ConfigError("run_experiment: out_csv is empty");
    std::map<std::string, int> arm_index;
    for (int a = 0; a < static_cast<int>(cfg.arms.size()); ++a) {
        if (cfg.arms[a].name.empty()) throw ConfigError("run_experiment: arm with empty name");
        if (!arm_index.emplace(cfg.arms[a].name, a).second)
            throw ConfigError("run_experiment: duplicate arm name: " + cfg.arms[a].name);
        if (cfg.arms[a].sim.classification_enabled && !cfg.arms[a].sim.dataset)
            throw ConfigError("run_experiment: arm '" + cfg.arms[a].name + "' has no dataset");
    }

    // Salvage complete (arm, run) pairs from a previous partial file.
    std::map<std::pair<int, int>, std::vector<RunRecord>> complete;
    if (std::filesystem::exists(cfg.out_csv)) {
        std::map<std::pair<int, int>, std::vector<RunRecord>> by_pair;
        for (RunRecord& r : read_records_csv(cfg.out_csv)) {
            const auto it = arm_index.find(r.arm);
            if (it == arm_index.end() || r.run < 0 || r.run >= cfg.runs) continue;
            by_pair[{it->second, r.run}].push_back(std::move(r));
        }
        for (auto& [key, recs] : by_pair) {
            const int expected = cfg.arms[key.first].evo.generations;
            std::sort(recs.begin(), recs.end(),
                      [](const RunRecord& a, const RunRecord& b) { return a.generation < b.generation; });
            bool whole = static_cast<int>(recs.size()) == expected;
            for (int g = 0; whole && g < expected; ++g) whole = recs[g].generation == g + 1;
            if (whole) complete[key] = std::move(recs);
        }
    }

    // Start the file over with just the salvaged pairs; this also proves the
    // output path is writable before any expensive work begins.
    std::vector<RunRecord> all_records;
    for (const auto& [key, recs] : complete)
        all_records.insert(all_records.end(), recs.begin(), recs.end());
    write_records_csv(cfg.out_csv, all_records);

    std::vector<detail::Job> jobs;
    for (int a = 0; a < static_cast<int>(cfg.arms.size()); ++a)
        for (int run = 0; run < cfg.runs; ++run)
            if (!complete.count({a, run})) jobs.push_back({a, run});

    const int total_jobs = static_cast<int>(jobs.size());
    std::ofstream append(cfg.out_csv, std::ios::app);
    if (!append) throw LoadError("cannot append csv: " + cfg.out_csv);

    const auto deliver = [&](int k, std::vector<RunRecord>&& records) {
        for (const RunRecord& r : records) append << detail::format_record(r) << '\n';
        append.flush();
        if (!append) throw LoadError("csv write failed: " + cfg.out_csv);
        if (progress) progress(cfg.arms[jobs[k].arm_index].name, jobs[k].run, k + 1, total_jobs);
        all_records.insert(all_records.end(), std::make_move_iterator(records.begin()),
                           std::make_move_iterator(records.end()));
    };

    int workers = cfg.workers <= 0 ? available_parallelism() : cfg.workers;
    workers = std::min(workers, std::max(total_jobs, 1));
    if (workers <= 1) {
        for (int k = 0; k < total_jobs; ++k) deliver(k, detail::execute_job(cfg, jobs[k]));
    } else {
        // Workers fill slots in any order; the main thread drains them in job
        // order so the file contents never depend on scheduling.
        struct Slot {
            std::vector<RunRecord> records;
            std::exception_ptr error;
            bool done = false;
        };
        std::vector<Slot> slots(total_jobs);
        std::mutex mutex;
        std::condition_variable filled;
        std::atomic<int> next{0};
        std::atomic<bool> abort{false};
        auto work = [&] {
            for (;;) {
                const int k = next.fetch_add(1);
                if (k >= total_jobs || abort.load()) return;
                Slot slot;
                try {
                    slot.records = detail::execute_job(cfg, jobs[k]);
                } catch (...) {
                    slot.error = std::current_exception();
                    abort = true;
                }
                slot.done = true;
                {
                    std::lock_guard<std::mutex> lock(mutex);
                    slots[k] = std::move(slot);
                }
                filled.notify_all();
            }
        };
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int t = 0; t < workers; ++t) threads.emplace_back(work);
        std::exception_ptr first_error;
        for (int k = 0; k < total_jobs && !first_error; ++k) {
            Slot slot;
            {
                std::unique_lock<std::mutex> lock(mutex);
                filled.wait(lock, [&] { return slots[k].done; });
                slot = std::move(slots[k]);
            }
            if (slot.error) {
                first_error = slot.error;
                abort = true;
            } else {
                try {
                    deliver(k, std::move(slot.records));
                } catch (...) {
                    first_error = std::current_exception();
                    abort = true;
                }
            }
        }
        for (std::thread& t : threads) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    append.close();

    std::sort(all_records.begin(), all_records.end(),
              [&](const RunRecord& a, const RunRecord& b) {
                  const int ai = arm_index.at(a.arm), bi = arm_index.at(b.arm);
                  if (ai != bi) return ai < bi;
                  if (a.run != b.run) return a.run < b.run;
                  return a.generation < b.generation;
              });
    write_records_csv(cfg.out_csv, all_records);
    return all_records;
}

}  // namespace devann
