#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "credal/core.hpp"

namespace credal {

// ---------------------------------------------------------------------------
// Spread functions for meta-class prototype selection
// ---------------------------------------------------------------------------

/// rho: mean absolute difference over all unordered pairs of distances.
inline double spread_rho(std::span<const double> distances) {
    const std::size_t n = distances.size();
    if (n < 2) throw std::domain_error("spread_rho needs at least two distances");
    double sum = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            sum += std::abs(distances[x] - distances[y]);
    return sum / static_cast<double>(pair_count(static_cast<int>(n), 2));
}

/// Population variance of the distance list.
inline double spread_variance(std::span<const double> distances) {
    if (distances.empty()) throw std::domain_error("spread_variance needs at least one distance");
    double mean = 0.0;
    for (double d : distances) mean += d;
    mean /= static_cast<double>(distances.size());
    double var = 0.0;
    for (double d : distances) var += (d - mean) * (d - mean);
    return var / static_cast<double>(distances.size());
}

inline double spread_eval(SpreadFunction f, std::span<const double> distances) {
    return f == SpreadFunction::PairwiseAbs ? spread_rho(distances) : spread_variance(distances);
}

// ---------------------------------------------------------------------------
// Prototypes and focal dissimilarities
// ---------------------------------------------------------------------------

/// Prototype of a meta class A (|A| >= 2): the object with the smallest
/// spread of distances to A's specific medoids plus eta times their mean.
/// Ties go to the lowest object index.
inline int meta_medoid(const DissimilarityMatrix& d, const std::vector<int>& specific,
                       FocalSet a, double eta, SpreadFunction f) {
    if (a.cardinality() < 2) throw std::domain_error("meta_medoid needs a set of cardinality >= 2");
    const auto members = a.members();
    std::vector<double> taus(members.size());
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d.size(); ++i) {
        double mean = 0.0;
        for (std::size_t t = 0; t < members.size(); ++t) {
            taus[t] = d(i, specific[static_cast<std::size_t>(members[t])]);
            mean += taus[t];
        }
        mean /= static_cast<double>(members.size());
        const double score = spread_eval(f, taus) + eta * mean;
        if (score < best_score) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

/// Fill the meta table of an assignment from its specific medoids.
inline MedoidAssignment make_assignment(const DissimilarityMatrix& d, std::vector<int> specific,
                                        const EcmddParams& params) {
    const int c = static_cast<int>(specific.size());
    MedoidAssignment a;
    a.specific = std::move(specific);
    a.meta.assign(std::size_t{1} << c, -1);
    for (std::size_t j = 1; j < a.meta.size(); ++j) {
        const FocalSet set{static_cast<std::uint32_t>(j)};
        if (set.cardinality() == 1)
            a.meta[j] = a.specific[static_cast<std::size_t>(set.members()[0])];
        else
            a.meta[j] = meta_medoid(d, a.specific, set, params.eta, params.spread);
    }
    validate_medoids(a, c, d.size());
    return a;
}

/// Dissimilarity between object i and focal set A. Singletons reduce to the
/// plain medoid distance; meta classes mix the meta-prototype distance with
/// the mean distance to the involved specific medoids, weighted by gamma.
inline double focal_dissimilarity(const DissimilarityMatrix& d, const MedoidAssignment& medoids,
                                  int i, FocalSet a, double gamma) {
    if (a.is_empty())
        throw std::domain_error("focal_dissimilarity undefined for the empty set");
    if (a.cardinality() == 1)
        return d(i, medoids.specific[static_cast<std::size_t>(a.members()[0])]);
    double mean = 0.0;
    for (int k : a.members()) mean += d(i, medoids.specific[static_cast<std::size_t>(k)]);
    mean /= a.cardinality();
    return (d(i, medoids.meta[a.bits]) + gamma * mean) / (1.0 + gamma);
}

/// n x (2^c - 1) grid of focal dissimilarities d_ij; column j-1 holds the
/// distance of each object to the nonempty focal set with index j.
struct FocalGrid {
    int c = 0;
    int n = 0;
    std::vector<double> d;  // row-major, nonempty sets only

    double at(int i, std::size_t focal_index) const {
        return d[static_cast<std::size_t>(i) * ((std::size_t{1} << c) - 1) + (focal_index - 1)];
    }
};

inline FocalGrid focal_grid(const DissimilarityMatrix& d, const MedoidAssignment& medoids,
                            const EcmddParams& params) {
    const int c = static_cast<int>(medoids.specific.size());
    const std::size_t cols = (std::size_t{1} << c) - 1;
    FocalGrid g{c, d.size(), std::vector<double>(cols * d.size())};
    for (int i = 0; i < d.size(); ++i)
        for (std::size_t j = 1; j <= cols; ++j)
            g.d[static_cast<std::size_t>(i) * cols + (j - 1)] =
                focal_dissimilarity(d, medoids, i, FocalSet{static_cast<std::uint32_t>(j)},
                                    params.gamma);
    return g;
}

// ---------------------------------------------------------------------------
// Alternating updates
// ---------------------------------------------------------------------------

/// Row-wise minimizer of the credal objective for fixed prototypes.
/// Zero distances take the continuous limit: mass splits equally among the
/// zero-distance focal sets of the row.
inline CredalPartition update_masses(const FocalGrid& grid, const EcmddParams& params) {
    const std::size_t cols = std::size_t{1} << grid.c;
    std::vector<double> m(static_cast<std::size_t>(grid.n) * cols, 0.0);
    const double mass_exp = -1.0 / (params.beta - 1.0);
    const double empty_term = std::pow(params.effective_delta(), mass_exp);
    std::vector<double> t(cols, 0.0);
    for (int i = 0; i < grid.n; ++i) {
        std::size_t zero_count = 0;
        for (std::size_t j = 1; j < cols; ++j)
            if (grid.at(i, j) == 0.0) ++zero_count;
        double* row = &m[static_cast<std::size_t>(i) * cols];
        if (zero_count > 0) {
            for (std::size_t j = 1; j < cols; ++j)
                if (grid.at(i, j) == 0.0) row[j] = 1.0 / static_cast<double>(zero_count);
            continue;
        }
        double total = 0.0;
        for (std::size_t j = 1; j < cols; ++j) {
            const int card = FocalSet{static_cast<std::uint32_t>(j)}.cardinality();
            t[j] = std::pow(static_cast<double>(card), params.alpha * mass_exp) *
                   std::pow(grid.at(i, j), mass_exp);
            total += t[j];
        }
        const double denom = total + empty_term;
        for (std::size_t j = 1; j < cols; ++j) row[j] = t[j] / denom;
        row[0] = empty_term / denom;
    }
    return CredalPartition(grid.c, grid.n, std::move(m));
}

/// New specific medoids: per-cluster argmin of the mass-weighted distance
/// column sum. Ties go to the lowest object index; objects taken by a
/// lower-indexed cluster this round are skipped so medoids stay distinct.
inline std::vector<int> update_specific_medoids(const DissimilarityMatrix& d,
                                                const CredalPartition& masses,
                                                const EcmddParams& params) {
    const int c = masses.cluster_count();
    const int n = d.size();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(c));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int k = 0; k < c; ++k) {
        const FocalSet singleton = FocalSet::singleton(k);
        for (int i = 0; i < n; ++i) w[i] = std::pow(masses.mass(i, singleton), params.beta);
        int best = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        for (int l = 0; l < n; ++l) {
            bool taken = false;
            for (int prev : out)
                if (prev == l) { taken = true; break; }
            if (taken) continue;
            double cost = 0.0;
            for (int i = 0; i < n; ++i) cost += w[i] * d(i, l);
            if (cost < best_cost) {
                best_cost = cost;
                best = l;
            }
        }
        out.push_back(best);
    }
    return out;
}

/// Credal objective J: cardinality-weighted mass-powered focal distances plus
/// the empty-set penalty.
inline double objective_value(const CredalPartition& masses, const MedoidAssignment& medoids,
                              const DissimilarityMatrix& d, const EcmddParams& params) {
    const FocalGrid grid = focal_grid(d, medoids, params);
    double j_total = 0.0;
    const double empty_coeff = params.effective_delta();
    for (int i = 0; i < grid.n; ++i) {
        for (std::size_t j = 1; j < masses.focal_count(); ++j) {
            const int card = FocalSet{static_cast<std::uint32_t>(j)}.cardinality();
            j_total += std::pow(static_cast<double>(card), params.alpha) *
                       std::pow(masses.mass(i, j), params.beta) * grid.at(i, j);
        }
        j_total += empty_coeff * std::pow(masses.mass(i, std::size_t{0}), params.beta);
    }
    return j_total;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

struct EcmddState {
    MedoidAssignment medoids;
    CredalPartition masses;
    FocalGrid focal_dissim;
    double objective = 0.0;
    int iteration = 0;
};

struct EcmddResult {
    EcmddState state;
    std::vector<double> trace;  // objective after each iteration
    bool converged = false;
};

/// Alternates the mass update (from the previous prototypes) with the
/// prototype update until the full medoid assignment repeats or max_iter is
/// reached. Non-convergence is flagged on the result, not thrown.
inline EcmddResult ecmdd_cluster(const DissimilarityMatrix& d, int c, const EcmddParams& params,
                                 const std::vector<int>& init) {
    params.validate();
    if (c < 2 || c > kMaxClusters) throw std::invalid_argument("ecmdd: cluster count out of range");
    if (c > d.size()) throw std::invalid_argument("ecmdd: need at least as many objects as clusters");
    if (static_cast<int>(init.size()) != c)
        throw std::invalid_argument("ecmdd: init must provide one medoid per cluster");

    MedoidAssignment current = make_assignment(d, init, params);
    std::vector<double> trace;
    std::optional<CredalPartition> masses;
    bool converged = false;
    int iter = 0;
    while (iter < params.max_iter && !converged) {
        ++iter;
        masses = update_masses(focal_grid(d, current, params), params);
        MedoidAssignment next =
            make_assignment(d, update_specific_medoids(d, *masses, params), params);
        trace.push_back(objective_value(*masses, next, d, params));
        converged = (next == current);
        current = std::move(next);
    }
    FocalGrid final_grid = focal_grid(d, current, params);
    return EcmddResult{EcmddState{std::move(current), std::move(*masses), std::move(final_grid),
                                  trace.back(), iter},
                       std::move(trace), converged};
}

}  // namespace credal
