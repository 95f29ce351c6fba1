#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace credal {

// Hard cap on the frame size: a credal partition has 2^c columns.
inline constexpr int kMaxClusters = 16;

// Tolerance used when validating loaded/constructed data (symmetry,
// row sums, diagonals).
inline constexpr double kValidationTol = 1e-9;

/// Error raised by file parsers; message carries the offending location.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// FocalSet
// ---------------------------------------------------------------------------

/// A subset of the cluster frame {w1..wc}, encoded as a bit pattern.
/// The focal-set index of A equals its bit-pattern value, so index 0 is the
/// empty set and the singleton {wk} has index 2^(k-1).
struct FocalSet {
    std::uint32_t bits = 0;

    constexpr FocalSet() = default;
    constexpr explicit FocalSet(std::uint32_t b) : bits(b) {}

    static constexpr FocalSet empty_set() { return FocalSet{0}; }
    static constexpr FocalSet singleton(int k) { return FocalSet{1u << k}; }

    constexpr int cardinality() const { return std::popcount(bits); }
    constexpr bool is_empty() const { return bits == 0; }
    constexpr bool contains(int k) const { return (bits >> k) & 1u; }
    constexpr bool subset_of(FocalSet other) const { return (bits & ~other.bits) == 0; }
    constexpr bool intersects(FocalSet other) const { return (bits & other.bits) != 0; }

    /// Member cluster indices in increasing order.
    std::vector<int> members() const {
        std::vector<int> out;
        for (int k = 0; k < kMaxClusters; ++k)
            if (contains(k)) out.push_back(k);
        return out;
    }

    /// Render as "{w1,w3}"; the empty set renders as "{}".
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int k : members()) {
            if (!first) s += ',';
            s += 'w' + std::to_string(k + 1);
            first = false;
        }
        s += '}';
        return s;
    }

    friend constexpr bool operator==(FocalSet a, FocalSet b) { return a.bits == b.bits; }
    friend constexpr bool operator<(FocalSet a, FocalSet b) { return a.bits < b.bits; }
};

/// All 2^c focal sets of a c-cluster frame in index order (index = bits).
inline std::vector<FocalSet> enumerate_focal_sets(int c) {
    if (c < 1 || c > kMaxClusters)
        throw std::invalid_argument("cluster count must be in [1, " +
                                    std::to_string(kMaxClusters) + "], got " + std::to_string(c));
    std::vector<FocalSet> sets;
    sets.reserve(std::size_t{1} << c);
    for (std::uint32_t b = 0; b < (1u << c); ++b) sets.push_back(FocalSet{b});
    return sets;
}

/// Binomial coefficient choose(a, b).
inline std::uint64_t pair_count(int a, int b) {
    if (a < 0 || b < 0 || b > a)
        throw std::domain_error("pair_count: need 0 <= b <= a, got a=" + std::to_string(a) +
                                " b=" + std::to_string(b));
    b = std::min(b, a - b);
    std::uint64_t r = 1;
    for (int i = 1; i <= b; ++i) {
        r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// ---------------------------------------------------------------------------
// DissimilarityMatrix
// ---------------------------------------------------------------------------

/// Symmetric n x n matrix of pairwise dissimilarities with zero diagonal.
/// The sole clustering input; construction rejects malformed data rather than
/// repairing it.
class DissimilarityMatrix {
public:
    DissimilarityMatrix(int n, std::vector<double> values, std::vector<std::string> labels = {})
        : n_(n), values_(std::move(values)), labels_(std::move(labels)) {
        if (n_ < 1) throw std::invalid_argument("dissimilarity matrix needs at least one object");
        if (values_.size() != static_cast<std::size_t>(n_) * n_)
            throw std::invalid_argument("dissimilarity matrix: value count does not match n*n");
        if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n_))
            throw std::invalid_argument("dissimilarity matrix: label count does not match n");
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                double v = values_[static_cast<std::size_t>(i) * n_ + j];
                if (!std::isfinite(v) || v < 0.0)
                    throw std::invalid_argument("dissimilarity matrix: entry (" + cell(i, j) +
                                                ") is negative or not finite");
                if (i == j && std::abs(v) > kValidationTol)
                    throw std::invalid_argument("dissimilarity matrix: diagonal entry (" +
                                                cell(i, j) + ") must be zero");
            }
        }
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > kValidationTol)
                    throw std::invalid_argument("dissimilarity matrix: asymmetric at cell (" +
                                                cell(j, i) + ")");
    }

    int size() const { return n_; }
    double operator()(int i, int j) const {
        return values_[static_cast<std::size_t>(i) * n_ + j];
    }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& values() const { return values_; }

    std::string label_of(int i) const {
        return labels_.empty() ? "obj" + std::to_string(i) : labels_[i];
    }

private:
    static std::string cell(int i, int j) {
        return std::to_string(i + 1) + "," + std::to_string(j + 1);
    }

    int n_;
    std::vector<double> values_;
    std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// n x 2^c matrix of masses; column j holds m_i(A_j) in focal-set index
/// order, column 0 being m_i(empty set). Rows sum to one.
class CredalPartition {
public:
    CredalPartition(int c, int n, std::vector<double> masses)
        : c_(c), n_(n), m_(std::move(masses)) {
        if (c_ < 1 || c_ > kMaxClusters) throw std::invalid_argument("credal partition: bad cluster count");
        if (n_ < 1) throw std::invalid_argument("credal partition: no objects");
        const std::size_t cols = std::size_t{1} << c_;
        if (m_.size() != cols * n_)
            throw std::invalid_argument("credal partition: mass grid has wrong shape");
        for (int i = 0; i < n_; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < cols; ++j) {
                double v = m_[i * cols + j];
                if (!(v >= -kValidationTol && v <= 1.0 + kValidationTol))
                    throw std::invalid_argument("credal partition: mass out of [0,1] at row " +
                                                std::to_string(i + 1));
                sum += v;
            }
            if (std::abs(sum - 1.0) > kValidationTol)
                throw std::invalid_argument("credal partition: row " + std::to_string(i + 1) +
                                            " sums to " + std::to_string(sum));
        }
    }

    int cluster_count() const { return c_; }
    int object_count() const { return n_; }
    std::size_t focal_count() const { return std::size_t{1} << c_; }

    double mass(int i, FocalSet a) const { return m_[i * focal_count() + a.bits]; }
    double mass(int i, std::size_t focal_index) const { return m_[i * focal_count() + focal_index]; }

    /// Copy of row i as a plain mass vector.
    std::vector<double> row(int i) const {
        auto b = m_.begin() + static_cast<std::ptrdiff_t>(i * focal_count());
        return {b, b + static_cast<std::ptrdiff_t>(focal_count())};
    }

private:
    int c_;
    int n_;
    std::vector<double> m_;
};

/// n x c fuzzy membership matrix; rows sum to one.
class FuzzyPartition {
public:
    FuzzyPartition(int c, int n, std::vector<double> memberships)
        : c_(c), n_(n), u_(std::move(memberships)) {
        if (c_ < 1) throw std::invalid_argument("fuzzy partition: bad cluster count");
        if (u_.size() != static_cast<std::size_t>(c_) * n_)
            throw std::invalid_argument("fuzzy partition: membership grid has wrong shape");
        for (int i = 0; i < n_; ++i) {
            double sum = 0.0;
            for (int j = 0; j < c_; ++j) {
                double v = u_[static_cast<std::size_t>(i) * c_ + j];
                if (!(v >= -kValidationTol && v <= 1.0 + kValidationTol))
                    throw std::invalid_argument("fuzzy partition: membership out of [0,1]");
                sum += v;
            }
            if (std::abs(sum - 1.0) > kValidationTol)
                throw std::invalid_argument("fuzzy partition: row " + std::to_string(i + 1) +
                                            " does not sum to 1");
        }
    }

    int cluster_count() const { return c_; }
    int object_count() const { return n_; }
    double membership(int i, int j) const { return u_[static_cast<std::size_t>(i) * c_ + j]; }

private:
    int c_;
    int n_;
    std::vector<double> u_;
};

// ---------------------------------------------------------------------------
// Medoid assignment
// ---------------------------------------------------------------------------

/// Prototype objects: one per specific cluster plus one per nonempty focal
/// set. meta[j] indexes the prototype of focal set j; meta[0] is unused (-1)
/// and meta[2^(k-1)] always equals specific[k].
struct MedoidAssignment {
    std::vector<int> specific;
    std::vector<int> meta;

    friend bool operator==(const MedoidAssignment&, const MedoidAssignment&) = default;
};

inline void validate_medoids(const MedoidAssignment& a, int c, int n) {
    if (static_cast<int>(a.specific.size()) != c)
        throw std::invalid_argument("medoid assignment: expected " + std::to_string(c) +
                                    " specific medoids");
    if (a.meta.size() != (std::size_t{1} << c))
        throw std::invalid_argument("medoid assignment: meta table has wrong size");
    for (int v : a.specific)
        if (v < 0 || v >= n) throw std::invalid_argument("medoid assignment: index out of range");
    for (int k = 0; k < c; ++k)
        for (int l = k + 1; l < c; ++l)
            if (a.specific[k] == a.specific[l])
                throw std::invalid_argument("medoid assignment: specific medoids must be distinct");
    for (int k = 0; k < c; ++k)
        if (a.meta[std::size_t{1} << k] != a.specific[k])
            throw std::invalid_argument("medoid assignment: singleton prototype mismatch");
    for (std::size_t j = 1; j < a.meta.size(); ++j)
        if (a.meta[j] < 0 || a.meta[j] >= n)
            throw std::invalid_argument("medoid assignment: meta index out of range");
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Which spread function scores meta-class prototype candidates.
enum class SpreadFunction {
    PairwiseAbs,  // rho: mean absolute pairwise difference
    Variance,     // population variance
};

struct EcmddParams {
    double alpha = 1.0;   // cardinality penalty exponent
    double beta = 2.0;    // weighting exponent, > 1
    double delta = 100.0; // outlier threshold, > 0
    double eta = 1.0;     // outlier-vs-medoid penalty, > 0
    double gamma = 1.0;   // imprecise-dissimilarity balance, >= 0
    int empty_penalty_exponent = 1; // 1 follows the printed mass update, 2 the written objective
    SpreadFunction spread = SpreadFunction::PairwiseAbs;
    int max_iter = 200;

    void validate() const {
        if (!(beta > 1.0)) throw std::invalid_argument("ecmdd params: beta must be > 1");
        if (!(delta > 0.0)) throw std::invalid_argument("ecmdd params: delta must be > 0");
        if (!(eta > 0.0)) throw std::invalid_argument("ecmdd params: eta must be > 0");
        if (!(gamma >= 0.0)) throw std::invalid_argument("ecmdd params: gamma must be >= 0");
        if (max_iter < 1) throw std::invalid_argument("ecmdd params: max_iter must be >= 1");
        if (empty_penalty_exponent != 1 && empty_penalty_exponent != 2)
            throw std::invalid_argument("ecmdd params: empty_penalty_exponent must be 1 or 2");
        if (!std::isfinite(alpha)) throw std::invalid_argument("ecmdd params: alpha must be finite");
    }

    /// Effective empty-set distance term delta^exponent.
    double effective_delta() const {
        return empty_penalty_exponent == 1 ? delta : delta * delta;
    }
};

}  // namespace credal
