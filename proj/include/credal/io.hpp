#pragma once

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "credal/belief.hpp"
#include "credal/core.hpp"
#include "credal/graphsim.hpp"
#include "credal/metrics.hpp"

namespace credal {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Low-level text helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size();
}

inline bool parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size();
}

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return in;
}

inline double round6(double v) {
    return std::round(v * 1e6) / 1e6;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Numeric CSV matrices
// ---------------------------------------------------------------------------

struct CsvMatrix {
    std::vector<std::string> row_labels;     // empty when absent
    std::vector<std::string> column_labels;  // empty when absent
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major
};

/// Parse a numeric CSV with an optional header row and optional leading
/// label column. Every malformed cell yields a located ParseError.
inline CsvMatrix parse_csv_matrix(std::istream& in, const std::string& name) {
    CsvMatrix out;
    std::string line;
    std::vector<std::vector<std::string>> raw;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        raw.push_back(detail::split_csv(t));
    }
    if (raw.empty()) throw ParseError(name + ": no data rows");

    double tmp;
    std::size_t start_row = 0;
    std::vector<std::string> header_cells;
    // a header row contains no numeric cells at all
    {
        bool all_text = true;
        for (const auto& cell : raw[0])
            if (detail::parse_double(cell, tmp)) all_text = false;
        if (all_text && raw.size() > 1) {
            header_cells = raw[0];
            start_row = 1;
        }
    }

    const bool has_row_labels = !detail::parse_double(raw[start_row][0], tmp);
    for (std::size_t r = start_row; r < raw.size(); ++r) {
        const auto& cells = raw[r];
        std::size_t first_col = 0;
        if (has_row_labels) {
            out.row_labels.push_back(cells[0]);
            first_col = 1;
        }
        const std::size_t width = cells.size() - first_col;
        if (out.rows == 0) {
            out.cols = width;
        } else if (width != out.cols) {
            throw ParseError(name + ": row " + std::to_string(r + 1) + " has " +
                             std::to_string(width) + " cells, expected " +
                             std::to_string(out.cols));
        }
        for (std::size_t cidx = first_col; cidx < cells.size(); ++cidx) {
            double v;
            if (!detail::parse_double(cells[cidx], v))
                throw ParseError(name + ": non-numeric cell (" + std::to_string(r + 1) + "," +
                                 std::to_string(cidx + 1) + "): '" + cells[cidx] + "'");
            out.values.push_back(v);
        }
        ++out.rows;
    }
    // header cells may or may not carry a corner cell before the column names
    if (header_cells.size() == out.cols + 1)
        out.column_labels.assign(header_cells.begin() + 1, header_cells.end());
    else if (header_cells.size() == out.cols)
        out.column_labels = header_cells;
    return out;
}

/// Load a symmetric dissimilarity matrix, validating squareness, symmetry
/// (tolerance 1e-9), nonnegativity and zero diagonal with located errors.
inline DissimilarityMatrix parse_dissimilarity_csv(std::istream& in, const std::string& name) {
    CsvMatrix m = parse_csv_matrix(in, name);
    if (m.rows != m.cols)
        throw ParseError(name + ": matrix is not square (" + std::to_string(m.rows) + "x" +
                         std::to_string(m.cols) + ")");
    const std::size_t n = m.rows;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m.values[i * n + j];
            if (v < 0.0 || !std::isfinite(v))
                throw ParseError(name + ": negative or non-finite entry at cell (" +
                                 std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
        if (std::abs(m.values[i * n + i]) > kValidationTol)
            throw ParseError(name + ": nonzero diagonal at cell (" + std::to_string(i + 1) + "," +
                             std::to_string(i + 1) + ")");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(m.values[i * n + j] - m.values[j * n + i]) > kValidationTol)
                throw ParseError(name + ": asymmetric at cell (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")");
    std::vector<std::string> labels = m.row_labels;
    if (labels.empty()) labels = m.column_labels;
    return DissimilarityMatrix(static_cast<int>(n), std::move(m.values), std::move(labels));
}

inline DissimilarityMatrix load_dissimilarity_csv(const std::string& path) {
    auto in = detail::open_or_throw(path);
    return parse_dissimilarity_csv(in, path);
}

inline void write_dissimilarity_csv(const DissimilarityMatrix& d, std::ostream& out) {
    const int n = d.size();
    if (!d.labels().empty()) {
        out << "name";
        for (int j = 0; j < n; ++j) out << ',' << d.labels()[static_cast<std::size_t>(j)];
        out << '\n';
    }
    out.precision(17);
    for (int i = 0; i < n; ++i) {
        if (!d.labels().empty()) out << d.labels()[static_cast<std::size_t>(i)] << ',';
        for (int j = 0; j < n; ++j) {
            if (j) out << ',';
            out << d(i, j);
        }
        out << '\n';
    }
}

inline void write_dissimilarity_csv(const DissimilarityMatrix& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    write_dissimilarity_csv(d, out);
    if (!out) throw std::runtime_error(path + ": write failed");
}

// ---------------------------------------------------------------------------
// Edge lists and label files
// ---------------------------------------------------------------------------

enum class Indexing { ZeroBased, OneBased, Named };

/// Whitespace- or comma-separated node pairs, one per line; '#' comments and
/// blank lines ignored; duplicate and reversed-duplicate edges collapse.
inline Graph parse_edge_list(std::istream& in, Indexing indexing, const std::string& name) {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> name_index;
    int max_index = -1;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        for (char& ch : t)
            if (ch == ',') ch = ' ';
        std::istringstream ls(t);
        std::string ta, tb, extra;
        if (!(ls >> ta >> tb))
            throw ParseError(name + ":" + std::to_string(lineno) + ": expected two node tokens");
        if (ls >> extra)
            throw ParseError(name + ":" + std::to_string(lineno) + ": trailing token '" + extra + "'");
        int a, b;
        if (indexing == Indexing::Named) {
            auto intern = [&](const std::string& tok) {
                auto it = name_index.find(tok);
                if (it != name_index.end()) return it->second;
                const int id = static_cast<int>(names.size());
                name_index.emplace(tok, id);
                names.push_back(tok);
                return id;
            };
            a = intern(ta);
            b = intern(tb);
        } else {
            long long la, lb;
            if (!detail::parse_int(ta, la) || !detail::parse_int(tb, lb))
                throw ParseError(name + ":" + std::to_string(lineno) + ": non-numeric node token");
            if (indexing == Indexing::OneBased) {
                --la;
                --lb;
            }
            if (la < 0 || lb < 0)
                throw ParseError(name + ":" + std::to_string(lineno) + ": node index out of range");
            a = static_cast<int>(la);
            b = static_cast<int>(lb);
        }
        if (a == b)
            throw ParseError(name + ":" + std::to_string(lineno) + ": self-loop on node '" + ta + "'");
        max_index = std::max({max_index, a, b});
        edges.emplace_back(a, b);
    }
    if (edges.empty()) throw ParseError(name + ": no edges");
    const int n = indexing == Indexing::Named ? static_cast<int>(names.size()) : max_index + 1;
    return make_graph(n, edges, std::move(names));
}

inline Graph load_edge_list(const std::string& path, Indexing indexing) {
    auto in = detail::open_or_throw(path);
    return parse_edge_list(in, indexing, path);
}

struct LabelFile {
    std::vector<int> labels;              // dense ids in first-appearance order
    std::vector<std::string> class_names; // original tokens per dense id
};

/// One label token per line; tokens map to dense integers preserving
/// first-appearance order.
inline LabelFile parse_labels(std::istream& in, const std::string& name) {
    LabelFile out;
    std::unordered_map<std::string, int> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto it = ids.find(t);
        int id;
        if (it == ids.end()) {
            id = static_cast<int>(out.class_names.size());
            ids.emplace(t, id);
            out.class_names.push_back(t);
        } else {
            id = it->second;
        }
        out.labels.push_back(id);
    }
    if (out.labels.empty()) throw ParseError(name + ": no labels");
    return out;
}

inline LabelFile load_labels(const std::string& path) {
    auto in = detail::open_or_throw(path);
    return parse_labels(in, path);
}

/// Check a label file against the dataset it annotates.
inline void require_label_count(const LabelFile& labels, int n, const std::string& name) {
    if (labels.labels.size() != static_cast<std::size_t>(n))
        throw std::domain_error(name + ": expected " + std::to_string(n) + " labels, got " +
                                std::to_string(labels.labels.size()));
}

/// Parse a focal-set string like "{w1,w3}" or "{}" back into a FocalSet.
inline FocalSet parse_focal_set(const std::string& s, int c) {
    const std::string t = detail::trim(s);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw ParseError("bad focal-set string: '" + s + "'");
    FocalSet out;
    std::istringstream body(t.substr(1, t.size() - 2));
    std::string tok;
    while (std::getline(body, tok, ',')) {
        tok = detail::trim(tok);
        if (tok.empty()) continue;
        long long k;
        if (tok.size() < 2 || tok[0] != 'w' || !detail::parse_int(tok.substr(1), k) || k < 1 ||
            k > c)
            throw ParseError("bad focal-set member: '" + tok + "'");
        out.bits |= 1u << (k - 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

struct MetricsBlock {
    ClassicMetrics classic;
    std::optional<EvidentialMetrics> evidential;
};

/// Everything a clustering run produces, ready for serialization.
struct RunReport {
    std::string algorithm;  // "ecmdd" or "fcmdd"
    ordered_json parameters;
    int n = 0;
    int c = 0;
    std::vector<std::string> object_labels;
    std::vector<int> initial_medoids;
    std::vector<int> final_specific;
    std::vector<std::pair<FocalSet, int>> final_meta;  // meta classes only (|A| >= 2)
    std::vector<std::vector<double>> matrix;     // masses (2^c cols) or memberships (c cols)
    std::vector<std::vector<double>> pignistic;  // empty for fcmdd
    std::vector<int> crisp_labels;               // max pignistic / max membership, 0-based
    std::vector<FocalSet> max_mass_labels;       // empty for fcmdd
    std::vector<double> trace;
    std::optional<double> validity;
    bool converged = false;
    int iterations = 0;
    std::optional<MetricsBlock> metrics;
};

inline void validate_report(const RunReport& r) {
    if (r.n < 1 || r.c < 1) throw std::invalid_argument("report: bad dimensions");
    if (r.trace.empty()) throw std::invalid_argument("report: empty objective trace");
    for (std::size_t t = 1; t < r.trace.size(); ++t)
        if (r.trace[t] > r.trace[t - 1] + 1e-9)
            throw std::invalid_argument("report: objective trace increases at step " +
                                        std::to_string(t));
    const std::size_t expect_cols =
        r.algorithm == "ecmdd" ? (std::size_t{1} << r.c) : static_cast<std::size_t>(r.c);
    if (r.matrix.size() != static_cast<std::size_t>(r.n))
        throw std::invalid_argument("report: matrix row count mismatch");
    for (const auto& row : r.matrix)
        if (row.size() != expect_cols) throw std::invalid_argument("report: matrix column mismatch");
    if (r.crisp_labels.size() != static_cast<std::size_t>(r.n))
        throw std::invalid_argument("report: label count mismatch");
}

inline ordered_json report_to_json(const RunReport& r) {
    validate_report(r);
    ordered_json j;
    j["algorithm"] = r.algorithm;
    j["n"] = r.n;
    j["c"] = r.c;
    j["parameters"] = r.parameters;
    j["objects"] = r.object_labels;
    j["initial_medoids"] = r.initial_medoids;
    ordered_json med;
    med["specific"] = r.final_specific;
    if (!r.final_meta.empty()) {
        ordered_json meta = ordered_json::object();
        for (const auto& [set, idx] : r.final_meta) meta[set.to_string()] = idx;
        med["meta"] = meta;
    }
    j["final_medoids"] = med;
    if (r.algorithm == "ecmdd") {
        std::vector<std::string> focal_names;
        for (const auto& s : enumerate_focal_sets(r.c)) focal_names.push_back(s.to_string());
        j["focal_sets"] = focal_names;
    }
    auto round_rows = [](const std::vector<std::vector<double>>& rows) {
        ordered_json out = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json jr = ordered_json::array();
            for (double v : row) jr.push_back(detail::round6(v));
            out.push_back(jr);
        }
        return out;
    };
    j[r.algorithm == "ecmdd" ? "masses" : "memberships"] = round_rows(r.matrix);
    if (!r.pignistic.empty()) j["pignistic"] = round_rows(r.pignistic);
    ordered_json labels;
    {
        std::vector<int> one_based;
        one_based.reserve(r.crisp_labels.size());
        for (int l : r.crisp_labels) one_based.push_back(l + 1);
        labels[r.algorithm == "ecmdd" ? "max_pignistic" : "max_membership"] = one_based;
    }
    if (!r.max_mass_labels.empty()) {
        std::vector<std::string> mm;
        for (FocalSet s : r.max_mass_labels) mm.push_back(s.to_string());
        labels["max_mass"] = mm;
    }
    j["labels"] = labels;
    {
        ordered_json tr = ordered_json::array();
        for (double v : r.trace) tr.push_back(detail::round6(v));
        j["objective_trace"] = tr;
    }
    j["validity_index"] = r.validity ? ordered_json(detail::round6(*r.validity)) : ordered_json(nullptr);
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    if (r.metrics) {
        ordered_json m;
        m["precision"] = detail::round6(r.metrics->classic.precision);
        m["recall"] = detail::round6(r.metrics->classic.recall);
        m["rand_index"] = detail::round6(r.metrics->classic.rand_index);
        if (r.metrics->evidential) {
            m["evidential_precision"] = detail::round6(r.metrics->evidential->ep);
            m["evidential_recall"] = detail::round6(r.metrics->evidential->er);
            m["evidential_rand_index"] = detail::round6(r.metrics->evidential->eri);
        }
        j["metrics"] = m;
    }
    return j;
}

enum class ReportFormat { Json, CsvBundle };

inline std::string render_report_json(const RunReport& r) {
    return report_to_json(r).dump(2) + "\n";
}

/// Write the CSV bundle (masses.csv, betp.csv, labels.csv, trace.csv) into a
/// directory, creating it when needed.
inline void write_report_csv_bundle(const RunReport& r, const std::string& dir) {
    validate_report(r);
    std::filesystem::create_directories(dir);
    auto open = [&](const std::string& file) {
        std::ofstream out(dir + "/" + file);
        if (!out) throw std::runtime_error(dir + "/" + file + ": cannot open for writing");
        return out;
    };
    const auto object_name = [&](int i) {
        return r.object_labels.empty() ? "obj" + std::to_string(i)
                                       : r.object_labels[static_cast<std::size_t>(i)];
    };
    {
        auto out = open("masses.csv");
        out << "object";
        if (r.algorithm == "ecmdd") {
            for (const auto& s : enumerate_focal_sets(r.c)) out << ',' << '"' << s.to_string() << '"';
        } else {
            for (int k = 1; k <= r.c; ++k) out << ",w" << k;
        }
        out << '\n';
        for (int i = 0; i < r.n; ++i) {
            out << object_name(i);
            for (double v : r.matrix[static_cast<std::size_t>(i)])
                out << ',' << detail::round6(v);
            out << '\n';
        }
    }
    if (!r.pignistic.empty()) {
        auto out = open("betp.csv");
        out << "object";
        for (int k = 1; k <= r.c; ++k) out << ",w" << k;
        out << '\n';
        for (int i = 0; i < r.n; ++i) {
            out << object_name(i);
            for (double v : r.pignistic[static_cast<std::size_t>(i)])
                out << ',' << detail::round6(v);
            out << '\n';
        }
    }
    {
        auto out = open("labels.csv");
        out << (r.algorithm == "ecmdd" ? "object,max_pignistic,max_mass" : "object,max_membership");
        out << '\n';
        for (int i = 0; i < r.n; ++i) {
            out << object_name(i) << ',' << (r.crisp_labels[static_cast<std::size_t>(i)] + 1);
            if (!r.max_mass_labels.empty())
                out << ',' << '"' << r.max_mass_labels[static_cast<std::size_t>(i)].to_string() << '"';
            out << '\n';
        }
    }
    {
        auto out = open("trace.csv");
        out << "iteration,objective\n";
        out.precision(17);
        for (std::size_t t = 0; t < r.trace.size(); ++t)
            out << (t + 1) << ',' << r.trace[t] << '\n';
    }
}

/// Write a report as one JSON document or as a CSV bundle directory.
inline void write_report(const RunReport& r, const std::string& path, ReportFormat format) {
    if (format == ReportFormat::CsvBundle) {
        write_report_csv_bundle(r, path);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << render_report_json(r);
    if (!out) throw std::runtime_error(path + ": write failed");
}

/// Labels recovered from a stored report, for evaluation against references.
struct ReportLabels {
    std::string algorithm;
    int c = 0;
    std::vector<int> crisp;               // 0-based
    std::vector<FocalSet> max_mass;       // empty for fcmdd reports
};

inline ReportLabels parse_report_labels(const ordered_json& j) {
    ReportLabels out;
    out.algorithm = j.at("algorithm").get<std::string>();
    out.c = j.at("c").get<int>();
    const auto& labels = j.at("labels");
    const char* key = out.algorithm == "ecmdd" ? "max_pignistic" : "max_membership";
    for (int l : labels.at(key).get<std::vector<int>>()) out.crisp.push_back(l - 1);
    if (labels.contains("max_mass"))
        for (const auto& s : labels.at("max_mass").get<std::vector<std::string>>())
            out.max_mass.push_back(parse_focal_set(s, out.c));
    return out;
}

inline ReportLabels load_report_labels(const std::string& path) {
    auto in = detail::open_or_throw(path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": invalid report JSON: " + e.what());
    }
    try {
        return parse_report_labels(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": report JSON missing fields: " + e.what());
    }
}

}  // namespace credal
