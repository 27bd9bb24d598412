#pragma once

// Batch operations over a dataset of cohorts. Each cohort is an independent
// problem: rows are computed in parallel and returned in input order, and an
// error in one row never affects another.

#include "seroinv/dataset.hpp"
#include "seroinv/errors.hpp"
#include "seroinv/estimator.hpp"
#include "seroinv/fit_oracle.hpp"
#include "seroinv/model.hpp"
#include "seroinv/parallel.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace seroinv {

struct RowError {
    std::string code;
    std::string detail;
};

struct ReportRow {
    std::string label;
    std::optional<RowError> error;
    ModelParams params;
    std::array<double, kDiseases> q{};
    std::array<bool, kDiseases> s_defined{};
    ValidityReport validity;
    std::optional<FitResult> oracle;
};

struct EstimateOptions {
    bool oracle = false;
    FitConfig fit;
};

struct EstimateReport {
    std::vector<ReportRow> rows;
    /// Per-disease mean of s_i over rows that produced a defined value.
    std::array<std::optional<double>, kDiseases> mean_s{};

    bool any_error() const {
        for (const auto& r : rows) {
            if (r.error) return true;
        }
        return false;
    }
};

inline ReportRow estimate_row(const CohortRecord& rec, const EstimateOptions& options) {
    ReportRow row;
    row.label = rec.label;
    row.validity = check_validity(invariants(rec.counts));
    try {
        const auto est = estimate(rec.counts);
        row.params = est.params;
        row.q = est.q;
        row.s_defined = est.s_defined;
        row.validity = est.validity;
    } catch (const Error& e) {
        row.error = RowError{std::string(to_string(e.code())), e.what()};
    }
    if (options.oracle && rec.counts.total() > 0) row.oracle = fit(rec.counts, options.fit);
    return row;
}

inline std::array<std::optional<double>, kDiseases> mean_seroconversion(const std::vector<ReportRow>& rows) {
    std::array<std::optional<double>, kDiseases> out;
    for (int i = 0; i < kDiseases; ++i) {
        double sum = 0.0;
        int used = 0;
        for (const auto& r : rows) {
            if (r.error || !r.s_defined[i]) continue;
            sum += r.params.s[i];
            ++used;
        }
        if (used > 0) out[i] = sum / used;
    }
    return out;
}

inline EstimateReport run_estimate(const std::vector<CohortRecord>& dataset, const EstimateOptions& options = {}) {
    EstimateReport report;
    report.rows.resize(dataset.size());
    parallel_for_index(dataset.size(), [&](std::size_t i) { report.rows[i] = estimate_row(dataset[i], options); });
    report.mean_s = mean_seroconversion(report.rows);
    return report;
}

struct ValidationRow {
    std::string label;
    ValidityReport validity;
};

/// Gates only; never fails per row.
inline std::vector<ValidationRow> run_validate(const std::vector<CohortRecord>& dataset) {
    std::vector<ValidationRow> rows;
    rows.reserve(dataset.size());
    for (const auto& rec : dataset) rows.push_back({rec.label, check_validity(invariants(rec.counts))});
    return rows;
}

struct ReconstructRow {
    std::string label;
    std::optional<RowError> error;
    Cells<double> observed{};
    Cells<double> expected{};
};

/// Expected counts n * forward(params) per cohort. Parameters come from the
/// closed form, or from `external` matched by label when given.
inline std::vector<ReconstructRow> run_reconstruct(const std::vector<CohortRecord>& dataset,
                                                   const std::vector<ParamRecord>* external = nullptr) {
    std::map<std::string, ModelParams> by_label;
    if (external) {
        for (const auto& p : *external) by_label.emplace(p.label, p.params);
    }
    std::vector<ReconstructRow> rows(dataset.size());
    parallel_for_index(dataset.size(), [&](std::size_t i) {
        const auto& rec = dataset[i];
        auto& row = rows[i];
        row.label = rec.label;
        row.observed = rec.counts.to_doubles();
        const double n = to_double(rec.counts.total());
        if (n == 0.0) return;  // all-zero row regardless of parameters
        ModelParams params;
        if (external) {
            const auto it = by_label.find(rec.label);
            if (it == by_label.end()) {
                row.error = RowError{"MissingParams", "no parameters for label '" + rec.label + "'"};
                return;
            }
            params = it->second;
        } else {
            try {
                const auto est = estimate(rec.counts);
                for (int d = 0; d < kDiseases; ++d) {
                    if (!est.s_defined[d]) {
                        throw Error(ErrorCode::SeroconversionUndefined,
                                    "s" + std::to_string(d + 1) + " undefined (exposure equals 1)");
                    }
                }
                params = est.params;
            } catch (const Error& e) {
                row.error = RowError{std::string(to_string(e.code())), e.what()};
                return;
            }
        }
        row.expected = expected_counts(params, n);
    });
    return rows;
}

struct SimulateOptions {
    std::uint64_t n = 1000;
    int replicates = 100;
    std::uint64_t seed = 1;
};

struct ReplicateRow {
    std::string param_label;
    int replicate = 0;
    std::uint64_t seed = 0;
    CohortRecord cohort;
    ReportRow estimate;
};

struct ParamSummary {
    std::string label;
    ModelParams truth;
    int replicates = 0;
    int estimated = 0;  // replicates with a closed-form estimate
    std::array<double, 7> mean{};    // v, e1..3, s1..3
    std::array<double, 7> stddev{};
    double error_fraction = 0.0;
    double degenerate_fraction = 0.0;  // Degenerate level or no estimate
    double not_fully_valid_fraction = 0.0;
    double f4_fail_fraction = 0.0;
    std::array<double, kDiseases> f2_fail_fraction{};
    std::array<double, kDiseases> strong_fail_fraction{};
};

struct SimulationResult {
    std::vector<ReplicateRow> replicates;
    std::vector<ParamSummary> summaries;
};

inline std::array<double, 7> flatten(const ModelParams& p) {
    return {p.v, p.e[0], p.e[1], p.e[2], p.s[0], p.s[1], p.s[2]};
}

/// Samples `replicates` cohorts per parameter record and estimates each.
/// Record j, replicate r uses seed + j * replicates + r, so the first record
/// draws with seeds seed, seed + 1, ...
inline SimulationResult run_simulate(const std::vector<ParamRecord>& params, const SimulateOptions& options) {
    if (options.n < 1) throw std::invalid_argument("simulate: n must be at least 1");
    if (options.replicates < 1) throw std::invalid_argument("simulate: replicates must be at least 1");
    for (const auto& p : params) {
        if (!params_in_range(p.params)) {
            throw Error(ErrorCode::ParameterOutOfRange, "parameters for '" + p.label + "' must lie in [0, 1]");
        }
    }
    const auto reps = static_cast<std::size_t>(options.replicates);
    SimulationResult out;
    out.replicates.resize(params.size() * reps);
    parallel_for_index(out.replicates.size(), [&](std::size_t idx) {
        const auto j = idx / reps;
        const auto r = idx % reps;
        auto& row = out.replicates[idx];
        row.param_label = params[j].label;
        row.replicate = static_cast<int>(r);
        row.seed = options.seed + idx;
        row.cohort.label = params[j].label + "-r" + std::to_string(r);
        row.cohort.counts = sample_cohort(params[j].params, options.n, row.seed);
        row.estimate = estimate_row(row.cohort, {});
    });

    for (std::size_t j = 0; j < params.size(); ++j) {
        ParamSummary sum;
        sum.label = params[j].label;
        sum.truth = params[j].params;
        sum.replicates = options.replicates;
        std::array<double, 7> acc{}, acc_sq{};
        std::array<int, 7> used{};
        int errors = 0, degenerate = 0, not_fully = 0, f4_fail = 0;
        std::array<int, kDiseases> f2_fail{}, strong_fail{};
        for (std::size_t r = 0; r < reps; ++r) {
            const auto& est = out.replicates[j * reps + r].estimate;
            const auto& val = est.validity;
            if (est.error) ++errors;
            if (est.error || val.level == ValidityLevel::Degenerate) ++degenerate;
            if (val.level != ValidityLevel::FullyValid) ++not_fully;
            if (!val.f4_positive) ++f4_fail;
            for (int d = 0; d < kDiseases; ++d) {
                if (!val.f2_positive[d]) ++f2_fail[d];
                if (!val.strong_gate[d]) ++strong_fail[d];
            }
            if (est.error) continue;
            const auto flat = flatten(est.params);
            for (int c = 0; c < 7; ++c) {
                if (!std::isfinite(flat[c])) continue;
                acc[c] += flat[c];
                acc_sq[c] += flat[c] * flat[c];
                ++used[c];
            }
        }
        sum.estimated = options.replicates - errors;
        for (int c = 0; c < 7; ++c) {
            if (used[c] == 0) {
                sum.mean[c] = sum.stddev[c] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            sum.mean[c] = acc[c] / used[c];
            const double var = used[c] > 1 ? (acc_sq[c] - used[c] * sum.mean[c] * sum.mean[c]) / (used[c] - 1) : 0.0;
            sum.stddev[c] = std::sqrt(std::max(0.0, var));
        }
        const double total = options.replicates;
        sum.error_fraction = errors / total;
        sum.degenerate_fraction = degenerate / total;
        sum.not_fully_valid_fraction = not_fully / total;
        sum.f4_fail_fraction = f4_fail / total;
        for (int d = 0; d < kDiseases; ++d) {
            sum.f2_fail_fraction[d] = f2_fail[d] / total;
            sum.strong_fail_fraction[d] = strong_fail[d] / total;
        }
        out.summaries.push_back(sum);
    }
    return out;
}

}  // namespace seroinv
