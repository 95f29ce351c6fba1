#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "credal/core.hpp"

namespace credal {

/// A single basic belief assignment over the power set of a c-cluster frame,
/// in focal-set index order (index 0 = empty set).
struct MassVector {
    int c = 0;
    std::vector<double> values;

    void validate() const {
        if (c < 1 || c > kMaxClusters) throw std::invalid_argument("mass vector: bad cluster count");
        if (values.size() != (std::size_t{1} << c))
            throw std::invalid_argument("mass vector: wrong length for frame size");
        double sum = 0.0;
        for (double v : values) {
            if (!(v >= -kValidationTol && v <= 1.0 + kValidationTol))
                throw std::invalid_argument("mass vector: entry out of [0,1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kValidationTol)
            throw std::invalid_argument("mass vector: does not sum to 1");
    }
};

/// Bel(A): total support committed to subsets of A.
inline double credibility(const MassVector& m, FocalSet a) {
    if (a.is_empty()) throw std::domain_error("credibility is undefined for the empty set");
    double sum = 0.0;
    for (std::size_t j = 1; j < m.values.size(); ++j)
        if (FocalSet{static_cast<std::uint32_t>(j)}.subset_of(a)) sum += m.values[j];
    return sum;
}

/// Pl(A): support compatible with A (mass of every set meeting A).
inline double plausibility(const MassVector& m, FocalSet a) {
    if (a.is_empty()) throw std::domain_error("plausibility is undefined for the empty set");
    double sum = 0.0;
    for (std::size_t j = 1; j < m.values.size(); ++j)
        if (FocalSet{static_cast<std::uint32_t>(j)}.intersects(a)) sum += m.values[j];
    return sum;
}

/// Pignistic transform: each focal mass is split equally among its members
/// and renormalized by 1 - m(empty). Length-c probability vector.
inline std::vector<double> pignistic(const MassVector& m) {
    const double empty_mass = m.values[0];
    const double denom = 1.0 - empty_mass;
    if (denom <= 0.0)
        throw std::domain_error("pignistic transform undefined: all mass on the empty set");
    std::vector<double> p(static_cast<std::size_t>(m.c), 0.0);
    for (std::size_t j = 1; j < m.values.size(); ++j) {
        const FocalSet a{static_cast<std::uint32_t>(j)};
        const double share = m.values[j] / (a.cardinality() * denom);
        for (int k = 0; k < m.c; ++k)
            if (a.contains(k)) p[k] += share;
    }
    return p;
}

inline MassVector row_mass(const CredalPartition& p, int i) {
    return MassVector{p.cluster_count(), p.row(i)};
}

/// Pignistic matrix of a whole partition, n x c.
inline std::vector<std::vector<double>> pignistic_matrix(const CredalPartition& p) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(p.object_count()));
    for (int i = 0; i < p.object_count(); ++i) out.push_back(pignistic(row_mass(p, i)));
    return out;
}

/// Crisp labels by maximum pignistic probability; ties go to the lowest
/// cluster index. Returns 0-based cluster indices.
inline std::vector<int> harden_max_pignistic(const CredalPartition& p) {
    std::vector<int> labels(static_cast<std::size_t>(p.object_count()), 0);
    for (int i = 0; i < p.object_count(); ++i) {
        const auto bet = pignistic(row_mass(p, i));
        int best = 0;
        for (int k = 1; k < p.cluster_count(); ++k)
            if (bet[k] > bet[best]) best = k;
        labels[i] = best;
    }
    return labels;
}

/// Hard credal labels: the focal set (empty set and meta classes included)
/// with the largest mass; ties go to the lowest focal-set index.
inline std::vector<FocalSet> harden_max_mass(const CredalPartition& p) {
    std::vector<FocalSet> labels(static_cast<std::size_t>(p.object_count()));
    for (int i = 0; i < p.object_count(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < p.focal_count(); ++j)
            if (p.mass(i, j) > p.mass(i, best)) best = j;
        labels[i] = FocalSet{static_cast<std::uint32_t>(best)};
    }
    return labels;
}

/// Nonspecificity index N*(c) in [0,1]: average imprecision of the credal
/// partition, 0 for fully specific partitions, 1 when all mass sits on the
/// whole frame or the empty set. Minimized over c to pick the cluster count.
inline double validity_index(const CredalPartition& p) {
    const int c = p.cluster_count();
    if (c < 2) throw std::domain_error("validity index needs at least 2 clusters");
    const double log2c = std::log2(static_cast<double>(c));
    double total = 0.0;
    for (int i = 0; i < p.object_count(); ++i) {
        double row = p.mass(i, std::size_t{0}) * log2c;
        for (std::size_t j = 1; j < p.focal_count(); ++j) {
            const int card = FocalSet{static_cast<std::uint32_t>(j)}.cardinality();
            row += p.mass(i, j) * std::log2(static_cast<double>(card));
        }
        total += row;
    }
    return total / (p.object_count() * log2c);
}

}  // namespace credal
