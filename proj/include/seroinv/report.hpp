#pragma once

// Text renderings of pipeline results: aligned tables for people, CSV for
// machines. Numbers use fixed notation at a configurable precision.

#include "seroinv/dataset.hpp"
#include "seroinv/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace seroinv {

inline constexpr int kDefaultPrecision = 3;

/// Fixed-point rendering; values that round to zero print without a sign.
inline std::string format_fixed(double x, int precision) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::abs(x) < 0.5 * std::pow(10.0, -precision)) x = 0.0;
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision) << x;
    return out.str();
}

inline std::string format_bool(bool b) { return b ? "1" : "0"; }

/// Names of the range flags that fail, e.g. "e3,s1"; "-" when none.
inline std::string out_of_range_summary(const ValidityReport& v) {
    std::string out;
    auto add = [&](const std::string& s) { out += (out.empty() ? "" : ",") + s; };
    if (!v.v_in_range) add("v");
    for (int i = 0; i < kDiseases; ++i) {
        if (!v.e_in_range[i]) add("e" + std::to_string(i + 1));
    }
    for (int i = 0; i < kDiseases; ++i) {
        if (!v.s_in_range[i]) add("s" + std::to_string(i + 1));
    }
    return out.empty() ? "-" : out;
}

namespace detail {

inline std::string join(const std::vector<std::string>& fields, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += sep;
        out += fields[i];
    }
    return out;
}

// Left-aligns the first column, right-aligns the rest.
inline void print_aligned(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) line += "  ";
            const auto pad = std::string(width[c] - r[c].size(), ' ');
            line += c == 0 ? r[c] + pad : pad + r[c];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
}

inline std::string format_rate(const ReportRow& row, double x, int precision) {
    return row.error ? std::string("") : format_fixed(x, precision);
}

}  // namespace detail

inline std::vector<std::string> estimate_csv_header(bool with_oracle) {
    std::vector<std::string> h{"label", "status", "level", "v", "e1", "e2", "e3", "s1", "s2", "s3",
                               "q1", "q2", "q3", "f4_positive", "f2_positive1", "f2_positive2", "f2_positive3",
                               "strong_gate1", "strong_gate2", "strong_gate3", "v_in_range",
                               "e_in_range1", "e_in_range2", "e_in_range3",
                               "s_in_range1", "s_in_range2", "s_in_range3"};
    if (with_oracle) {
        for (const char* c : {"oracle_v", "oracle_e1", "oracle_e2", "oracle_e3", "oracle_s1", "oracle_s2",
                              "oracle_s3", "oracle_objective", "oracle_converged"}) {
            h.emplace_back(c);
        }
    }
    return h;
}

inline void render_estimate_csv(std::ostream& os, const EstimateReport& report, int precision) {
    bool with_oracle = false;
    for (const auto& r : report.rows) with_oracle = with_oracle || r.oracle.has_value();
    os << detail::join(estimate_csv_header(with_oracle)) << '\n';
    for (const auto& r : report.rows) {
        const auto& v = r.validity;
        std::vector<std::string> f{r.label, r.error ? r.error->code : "ok", std::string(to_string(v.level))};
        f.push_back(detail::format_rate(r, r.params.v, precision));
        for (double x : r.params.e) f.push_back(detail::format_rate(r, x, precision));
        for (double x : r.params.s) f.push_back(detail::format_rate(r, x, precision));
        for (double x : r.q) f.push_back(detail::format_rate(r, x, precision));
        f.push_back(format_bool(v.f4_positive));
        for (bool b : v.f2_positive) f.push_back(format_bool(b));
        for (bool b : v.strong_gate) f.push_back(format_bool(b));
        f.push_back(format_bool(v.v_in_range));
        for (bool b : v.e_in_range) f.push_back(format_bool(b));
        for (bool b : v.s_in_range) f.push_back(format_bool(b));
        if (with_oracle) {
            if (r.oracle) {
                for (double x : flatten(r.oracle->params)) f.push_back(format_fixed(x, precision));
                std::ostringstream obj;
                obj << std::setprecision(6) << r.oracle->objective;
                f.push_back(obj.str());
                f.push_back(format_bool(r.oracle->converged));
            } else {
                f.insert(f.end(), 9, "");
            }
        }
        os << detail::join(f) << '\n';
    }
    std::vector<std::string> footer{"# mean_s"};
    for (const auto& m : report.mean_s) footer.push_back(m ? format_fixed(*m, precision) : "");
    os << detail::join(footer) << '\n';
}

inline void render_estimate_table(std::ostream& os, const EstimateReport& report, int precision) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"label", "level", "v", "e1", "e2", "e3", "s1", "s2", "s3", "out_of_range"};
    bool with_oracle = false;
    for (const auto& r : report.rows) with_oracle = with_oracle || r.oracle.has_value();
    if (with_oracle) {
        for (const char* c : {"fit_v", "fit_e1", "fit_e2", "fit_e3", "fit_s1", "fit_s2", "fit_s3", "fit_obj"}) {
            head.emplace_back(c);
        }
    }
    rows.push_back(head);
    for (const auto& r : report.rows) {
        std::vector<std::string> f{r.label};
        if (r.error) {
            f.push_back(r.error->code);
            f.insert(f.end(), 8, "");
        } else {
            f.push_back(std::string(to_string(r.validity.level)));
            for (double x : flatten(r.params)) f.push_back(format_fixed(x, precision));
            f.push_back(out_of_range_summary(r.validity));
        }
        if (r.oracle) {
            for (double x : flatten(r.oracle->params)) f.push_back(format_fixed(x, precision));
            std::ostringstream obj;
            obj << std::setprecision(3) << r.oracle->objective << (r.oracle->converged ? "" : " (no conv)");
            f.push_back(obj.str());
        }
        rows.push_back(f);
    }
    detail::print_aligned(os, rows);
    os << "mean s:";
    for (const auto& m : report.mean_s) os << ' ' << (m ? format_fixed(*m, precision) : "n/a");
    os << '\n';
}

struct ParsedEstimateCsv {
    std::vector<ReportRow> rows;
    std::array<std::optional<double>, kDiseases> mean_s{};
};

/// Reads back the CSV written by render_estimate_csv.
inline ParsedEstimateCsv parse_estimate_csv(std::istream& in) {
    ParsedEstimateCsv out;
    std::string raw;
    std::vector<std::string> header;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty()) continue;
        std::vector<std::string> f;
        for (auto x : detail::split_csv(line)) f.emplace_back(x);
        if (f[0] == "# mean_s") {
            for (int i = 0; i < kDiseases && i + 1 < static_cast<int>(f.size()); ++i) {
                if (!f[i + 1].empty()) out.mean_s[i] = detail::parse_real(f[i + 1], line_no, "mean_s");
            }
            continue;
        }
        if (line.front() == '#') continue;
        if (header.empty()) {
            header = f;
            if (header != estimate_csv_header(false) && header != estimate_csv_header(true)) {
                throw DatasetError(DatasetError::Kind::Schema, line_no, "not an estimate report header");
            }
            continue;
        }
        if (f.size() != header.size()) {
            throw DatasetError(DatasetError::Kind::Schema, line_no, "wrong column count");
        }
        std::map<std::string, std::string> col;
        for (std::size_t c = 0; c < header.size(); ++c) col[header[c]] = f[c];
        ReportRow r;
        r.label = col["label"];
        if (col["status"] != "ok") r.error = RowError{col["status"], ""};
        const std::string level = col["level"];
        r.validity.level = level == "FullyValid"     ? ValidityLevel::FullyValid
                           : level == "CoverageOnly" ? ValidityLevel::CoverageOnly
                                                     : ValidityLevel::Degenerate;
        auto num = [&](const std::string& name) {
            const auto& s = col[name];
            if (s.empty() || s == "nan") return std::numeric_limits<double>::quiet_NaN();
            return detail::parse_real(s, line_no, r.label);
        };
        auto flag = [&](const std::string& name) { return col[name] == "1"; };
        r.params.v = num("v");
        for (int i = 0; i < kDiseases; ++i) {
            const auto k = std::to_string(i + 1);
            r.params.e[i] = num("e" + k);
            r.params.s[i] = num("s" + k);
            r.q[i] = num("q" + k);
            r.s_defined[i] = !std::isnan(r.params.s[i]);
            r.validity.f2_positive[i] = flag("f2_positive" + k);
            r.validity.strong_gate[i] = flag("strong_gate" + k);
            r.validity.e_in_range[i] = flag("e_in_range" + k);
            r.validity.s_in_range[i] = flag("s_in_range" + k);
        }
        r.validity.f4_positive = flag("f4_positive");
        r.validity.v_in_range = flag("v_in_range");
        out.rows.push_back(std::move(r));
    }
    return out;
}

inline void render_validate(std::ostream& os, const std::vector<ValidationRow>& rows, bool csv) {
    std::vector<std::vector<std::string>> out;
    out.push_back({"label", "level", "f4_positive", "f2_positive1", "f2_positive2", "f2_positive3",
                   "strong_gate1", "strong_gate2", "strong_gate3"});
    for (const auto& r : rows) {
        std::vector<std::string> f{r.label, std::string(to_string(r.validity.level)),
                                   format_bool(r.validity.f4_positive)};
        for (bool b : r.validity.f2_positive) f.push_back(format_bool(b));
        for (bool b : r.validity.strong_gate) f.push_back(format_bool(b));
        out.push_back(f);
    }
    if (csv) {
        for (const auto& r : out) os << detail::join(r) << '\n';
    } else {
        detail::print_aligned(os, out);
    }
}

inline void render_reconstruct(std::ostream& os, const std::vector<ReconstructRow>& rows, int precision, bool csv) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> head{"label", "status"};
    for (int k = 0; k < kCells; ++k) head.push_back("a" + std::to_string(k));
    out.push_back(head);
    for (const auto& r : rows) {
        std::vector<std::string> f{r.label, r.error ? r.error->code : "ok"};
        for (double x : r.expected) f.push_back(r.error ? std::string("") : format_fixed(x, precision));
        out.push_back(f);
    }
    if (csv) {
        for (const auto& r : out) os << detail::join(r) << '\n';
    } else {
        detail::print_aligned(os, out);
    }
}

inline std::string format_count(const Exact& x) {
    if (is_integral(x)) return boost::multiprecision::numerator(x).str();
    std::ostringstream out;
    out << std::setprecision(17) << to_double(x);
    return out.str();
}

/// Writes records in the loadable dataset CSV schema.
inline void write_dataset_csv(std::ostream& os, const std::vector<CohortRecord>& records) {
    os << detail::join(dataset_header()) << '\n';
    for (const auto& rec : records) {
        std::vector<std::string> f{rec.label};
        for (const auto& c : rec.counts.cells()) f.push_back(format_count(c));
        os << detail::join(f) << '\n';
    }
}

inline void render_simulation(std::ostream& os, const SimulationResult& sim, int precision, bool csv) {
    std::vector<std::vector<std::string>> out;
    out.push_back({"label", "seed", "status", "level", "v", "e1", "e2", "e3", "s1", "s2", "s3"});
    for (const auto& r : sim.replicates) {
        const auto& est = r.estimate;
        std::vector<std::string> f{r.cohort.label, std::to_string(r.seed), est.error ? est.error->code : "ok",
                                   std::string(to_string(est.validity.level))};
        for (double x : flatten(est.params)) f.push_back(est.error ? std::string("") : format_fixed(x, precision));
        out.push_back(f);
    }
    if (csv) {
        for (const auto& r : out) os << detail::join(r) << '\n';
    } else {
        detail::print_aligned(os, out);
    }

    const char* names[7] = {"v", "e1", "e2", "e3", "s1", "s2", "s3"};
    for (const auto& s : sim.summaries) {
        os << (csv ? "# " : "\n") << "summary " << s.label << ": " << s.estimated << "/" << s.replicates
           << " replicates estimated\n";
        std::vector<std::vector<std::string>> tab{{"param", "true", "mean", "stddev"}};
        const auto truth = flatten(s.truth);
        for (int c = 0; c < 7; ++c) {
            tab.push_back({names[c], format_fixed(truth[c], precision), format_fixed(s.mean[c], precision),
                           format_fixed(s.stddev[c], precision)});
        }
        if (csv) {
            for (const auto& r : tab) os << "# " << detail::join(r) << '\n';
        } else {
            detail::print_aligned(os, tab);
        }
        std::ostringstream frac;
        frac << (csv ? "# " : "") << "gate failure fractions: error=" << format_fixed(s.error_fraction, precision)
             << " degenerate=" << format_fixed(s.degenerate_fraction, precision)
             << " not_fully_valid=" << format_fixed(s.not_fully_valid_fraction, precision)
             << " f4=" << format_fixed(s.f4_fail_fraction, precision);
        for (int d = 0; d < kDiseases; ++d) frac << " f2" << d + 1 << "=" << format_fixed(s.f2_fail_fraction[d], precision);
        for (int d = 0; d < kDiseases; ++d) {
            frac << " strong" << d + 1 << "=" << format_fixed(s.strong_fail_fraction[d], precision);
        }
        os << frac.str() << '\n';
    }
}

}  // namespace seroinv
