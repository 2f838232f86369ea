#pragma once

// CSV-backed binary classification data: four real features and a 0/1 label
// per row, features min-max normalized per column into [-1, 1].

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "devann/brain.hpp"
#include "devann/errors.hpp"

namespace devann {

struct Dataset {
    static constexpr int kFeatures = 4;
    std::vector<double> features;  // row-major, rows() * kFeatures
    std::vector<int> labels;

    int rows() const { return static_cast<int>(labels.size()); }
    const double* row(int r) const { return features.data() + static_cast<std::size_t>(r) * kFeatures; }
};

// Per-column min-max rescale into [-1, 1] using the data's own bounds; a
// constant column maps to 0.
inline void normalize_columns(Dataset& d) {
    if (d.rows() == 0) return;
    for (int c = 0; c < Dataset::kFeatures; ++c) {
        double lo = d.features[c], hi = d.features[c];
        for (int r = 1; r < d.rows(); ++r) {
            const double v = d.features[static_cast<std::size_t>(r) * Dataset::kFeatures + c];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (int r = 0; r < d.rows(); ++r) {
            double& v = d.features[static_cast<std::size_t>(r) * Dataset::kFeatures + c];
            v = lo == hi ? 0.0 : 2.0 * (v - lo) / (hi - lo) - 1.0;
        }
    }
}

namespace detail {
inline bool parse_double(const std::string& field, double& out) {
    const char* begin = field.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0';
}

enum class RowParse { ok, non_numeric, bad_shape, bad_label };

inline RowParse parse_row(const std::string& line, std::array<double, 4>& features,
                          int& label) {
    std::stringstream ss(line);
    std::string field;
    int idx = 0;
    double values[5];
    while (std::getline(ss, field, ',')) {
        if (idx >= 5) return RowParse::bad_shape;
        if (!parse_double(field, values[idx])) return RowParse::non_numeric;
        ++idx;
    }
    if (idx != 5) return RowParse::bad_shape;
    for (int c = 0; c < 4; ++c) features[c] = values[c];
    if (values[4] != 0.0 && values[4] != 1.0) return RowParse::bad_label;
    label = static_cast<int>(values[4]);
    return RowParse::ok;
}
}  // namespace detail

// Loads `f1,f2,f3,f4,label` rows and normalizes the columns. A non-numeric
// first line is treated as a header and skipped; anything malformed after
// that is an error that names the offending line.
inline Dataset load_dataset(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw LoadError("cannot open dataset: " + path);
    Dataset d;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 4> features;
        int label;
        switch (detail::parse_row(line, features, label)) {
            case detail::RowParse::ok:
                d.features.insert(d.features.end(), features.begin(), features.end());
                d.labels.push_back(label);
                break;
            case detail::RowParse::non_numeric:
                if (line_no == 1) continue;  // header
                throw LoadError(path + ": malformed row at line " + std::to_string(line_no));
            case detail::RowParse::bad_label:
                throw LoadError(path + ": label outside {0,1} at line " +
                                std::to_string(line_no));
            default:
                throw LoadError(path + ": malformed row at line " + std::to_string(line_no));
        }
    }
    if (d.rows() == 0) throw LoadError(path + ": no data rows");
    normalize_columns(d);
    return d;
}

// Full-dataset pass: predict class 1 when the task output is >= 0.
// Returns (correct, total).
inline std::pair<int, int> evaluate_classification(const WiredNetwork& net, int task_id,
                                                   const Dataset& d) {
    if (net.tasks[task_id].output_slots.size() != 1)
        throw ContractError("evaluate_classification: task must have one output");
    const std::vector<double> out = evaluate_batch(net, task_id, d.features, d.rows());
    int correct = 0;
    for (int r = 0; r < d.rows(); ++r) {
        const int predicted = out[r] >= 0.0 ? 1 : 0;
        if (predicted == d.labels[r]) ++correct;
    }
    return {correct, d.rows()};
}

}  // namespace devann
