#pragma once

// Cohort datasets and parameter files.
//
// CSV dataset:   label,a0,a1,a2,a3,a4,a5,a6,a7
// JSON dataset:  [{"label": "AG1", "counts": [156, 2, 3, 2, 1, 6, 1, 38]}, ...]
// CSV params:    label,v,e1,e2,e3,s1,s2,s3
// JSON params:   [{"label": "AG1", "v": 0.227, "e": [..3..], "s": [..3..]}, ...]
//
// CSV files are UTF-8, comma separated, '.' as decimal mark, header required.
// Blank lines and lines starting with '#' are skipped.

#include "seroinv/counts.hpp"
#include "seroinv/exact.hpp"
#include "seroinv/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seroinv {

enum class DataFormat { Csv, Json };

class DatasetError : public std::runtime_error {
public:
    enum class Kind { Io, Parse, Schema };

    DatasetError(Kind kind, std::size_t line, const std::string& what)
        : std::runtime_error(describe(kind, line, what)), kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    /// 1-based source line, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    static std::string describe(Kind kind, std::size_t line, const std::string& what) {
        std::string head = kind == Kind::Io ? "IoError" : kind == Kind::Parse ? "ParseError" : "SchemaError";
        if (line > 0) head += " (line " + std::to_string(line) + ")";
        return head + ": " + what;
    }

    Kind kind_;
    std::size_t line_;
};

struct CohortRecord {
    std::string label;
    CountVector counts;
};

struct ParamRecord {
    std::string label;
    ModelParams params;
};

inline DataFormat parse_format(std::string_view name) {
    if (name == "csv") return DataFormat::Csv;
    if (name == "json") return DataFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

/// Guesses the format from the extension; anything but .json (any case) is CSV.
inline DataFormat format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".json" ? DataFormat::Json : DataFormat::Csv;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line, fields)
};

inline CsvTable read_csv(std::istream& in, const std::vector<std::string>& expected_header) {
    CsvTable table;
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        if (line_no == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        for (auto f : split_csv(line)) fields.emplace_back(f);
        if (!have_header) {
            if (fields != expected_header) {
                std::string want;
                for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
                throw DatasetError(DatasetError::Kind::Schema, line_no, "header must be '" + want + "'");
            }
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        table.rows.emplace_back(line_no, std::move(fields));
    }
    if (!have_header) throw DatasetError(DatasetError::Kind::Schema, 0, "missing header row");
    return table;
}

inline Exact parse_count(const std::string& field, std::size_t line, const std::string& label) {
    Exact value;
    try {
        value = parse_decimal(field);
    } catch (const std::invalid_argument&) {
        throw DatasetError(DatasetError::Kind::Parse, line, "row '" + label + "': '" + field + "' is not a number");
    }
    if (value < 0) {
        throw DatasetError(DatasetError::Kind::Schema, line, "row '" + label + "': negative count " + field);
    }
    return value;
}

inline double parse_real(const std::string& field, std::size_t line, const std::string& label) {
    try {
        return to_double(parse_decimal(field));
    } catch (const std::invalid_argument&) {
        throw DatasetError(DatasetError::Kind::Parse, line, "row '" + label + "': '" + field + "' is not a number");
    }
}

inline void check_label(const std::string& label, std::set<std::string>& seen, std::size_t line) {
    if (label.empty()) throw DatasetError(DatasetError::Kind::Schema, line, "empty label");
    if (!seen.insert(label).second) {
        throw DatasetError(DatasetError::Kind::Schema, line, "duplicate label '" + label + "'");
    }
}

inline std::size_t line_of_byte(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

inline nlohmann::json parse_json(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        auto doc = nlohmann::json::parse(text);
        if (!doc.is_array()) throw DatasetError(DatasetError::Kind::Schema, 0, "top-level JSON value must be an array");
        return doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw DatasetError(DatasetError::Kind::Parse, line_of_byte(text, e.byte), e.what());
    }
}

inline Exact json_count(const nlohmann::json& v, const std::string& label) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Exact(v.get<unsigned long long>());
        const auto x = v.get<long long>();
        if (x < 0) throw DatasetError(DatasetError::Kind::Schema, 0, "record '" + label + "': negative count");
        return Exact(x);
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (!(x >= 0.0)) throw DatasetError(DatasetError::Kind::Schema, 0, "record '" + label + "': negative count");
        return Exact(x);
    }
    throw DatasetError(DatasetError::Kind::Schema, 0, "record '" + label + "': counts must be numbers");
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError(DatasetError::Kind::Io, 0, "cannot open '" + path.string() + "'");
    return in;
}

}  // namespace detail

inline const std::vector<std::string>& dataset_header() {
    static const std::vector<std::string> h{"label", "a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7"};
    return h;
}

inline const std::vector<std::string>& params_header() {
    static const std::vector<std::string> h{"label", "v", "e1", "e2", "e3", "s1", "s2", "s3"};
    return h;
}

inline std::vector<CohortRecord> load_dataset(std::istream& in, DataFormat format) {
    std::vector<CohortRecord> out;
    std::set<std::string> seen;
    if (format == DataFormat::Csv) {
        const auto table = detail::read_csv(in, dataset_header());
        for (const auto& [line, fields] : table.rows) {
            const std::string label = fields.empty() ? std::string() : fields[0];
            if (fields.size() != dataset_header().size()) {
                throw DatasetError(DatasetError::Kind::Schema, line,
                                   "row '" + label + "' has " + std::to_string(fields.size() - 1) +
                                       " counts, expected 8");
            }
            detail::check_label(label, seen, line);
            std::array<Exact, kCells> cells;
            for (int k = 0; k < kCells; ++k) cells[k] = detail::parse_count(fields[k + 1], line, label);
            out.push_back({label, CountVector(cells)});
        }
        return out;
    }
    const auto doc = detail::parse_json(in);
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("label") || !item.contains("counts") || !item["label"].is_string()) {
            throw DatasetError(DatasetError::Kind::Schema, 0, "each record needs a string 'label' and a 'counts' array");
        }
        const std::string label = item["label"].get<std::string>();
        const auto& counts = item["counts"];
        if (!counts.is_array() || counts.size() != kCells) {
            throw DatasetError(DatasetError::Kind::Schema, 0, "record '" + label + "' must have exactly 8 counts");
        }
        detail::check_label(label, seen, 0);
        std::array<Exact, kCells> cells;
        for (int k = 0; k < kCells; ++k) cells[k] = detail::json_count(counts[k], label);
        out.push_back({label, CountVector(cells)});
    }
    return out;
}

inline std::vector<CohortRecord> load_dataset(const std::filesystem::path& path, DataFormat format) {
    auto in = detail::open_input(path);
    return load_dataset(in, format);
}

inline std::vector<ParamRecord> load_params(std::istream& in, DataFormat format) {
    std::vector<ParamRecord> out;
    std::set<std::string> seen;
    if (format == DataFormat::Csv) {
        const auto table = detail::read_csv(in, params_header());
        for (const auto& [line, fields] : table.rows) {
            const std::string label = fields.empty() ? std::string() : fields[0];
            if (fields.size() != params_header().size()) {
                throw DatasetError(DatasetError::Kind::Schema, line, "row '" + label + "' must have 7 parameters");
            }
            detail::check_label(label, seen, line);
            ParamRecord rec{label, {}};
            rec.params.v = detail::parse_real(fields[1], line, label);
            for (int i = 0; i < kDiseases; ++i) {
                rec.params.e[i] = detail::parse_real(fields[2 + i], line, label);
                rec.params.s[i] = detail::parse_real(fields[5 + i], line, label);
            }
            out.push_back(rec);
        }
        return out;
    }
    const auto doc = detail::parse_json(in);
    for (const auto& item : doc) {
        const bool ok = item.is_object() && item.contains("label") && item["label"].is_string() &&
                        item.contains("v") && item["v"].is_number() && item.contains("e") &&
                        item["e"].is_array() && item["e"].size() == kDiseases && item.contains("s") &&
                        item["s"].is_array() && item["s"].size() == kDiseases;
        if (!ok) throw DatasetError(DatasetError::Kind::Schema, 0, "each params record needs label, v, e[3], s[3]");
        ParamRecord rec{item["label"].get<std::string>(), {}};
        detail::check_label(rec.label, seen, 0);
        rec.params.v = item["v"].get<double>();
        for (int i = 0; i < kDiseases; ++i) {
            if (!item["e"][i].is_number() || !item["s"][i].is_number()) {
                throw DatasetError(DatasetError::Kind::Schema, 0, "record '" + rec.label + "': rates must be numbers");
            }
            rec.params.e[i] = item["e"][i].get<double>();
            rec.params.s[i] = item["s"][i].get<double>();
        }
        out.push_back(rec);
    }
    return out;
}

inline std::vector<ParamRecord> load_params(const std::filesystem::path& path, DataFormat format) {
    auto in = detail::open_input(path);
    return load_params(in, format);
}

}  // namespace seroinv
