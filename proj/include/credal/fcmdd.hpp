#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "credal/core.hpp"

namespace credal {

struct FcmddParams {
    double beta = 2.0;  // weighting exponent, > 1
    int max_iter = 200;

    void validate() const {
        if (!(beta > 1.0)) throw std::invalid_argument("fcmdd params: beta must be > 1");
        if (max_iter < 1) throw std::invalid_argument("fcmdd params: max_iter must be >= 1");
    }
};

/// Membership update for fixed medoids. A zero distance makes the row crisp:
/// mass splits equally over the zero-distance medoids.
inline FuzzyPartition fcmdd_update_memberships(const DissimilarityMatrix& d,
                                               const std::vector<int>& medoids, double beta) {
    const int c = static_cast<int>(medoids.size());
    const int n = d.size();
    std::vector<double> u(static_cast<std::size_t>(n) * c, 0.0);
    const double exponent = -1.0 / (beta - 1.0);
    for (int i = 0; i < n; ++i) {
        double* row = &u[static_cast<std::size_t>(i) * c];
        int zero_count = 0;
        for (int j = 0; j < c; ++j)
            if (d(i, medoids[static_cast<std::size_t>(j)]) == 0.0) ++zero_count;
        if (zero_count > 0) {
            for (int j = 0; j < c; ++j)
                if (d(i, medoids[static_cast<std::size_t>(j)]) == 0.0)
                    row[j] = 1.0 / zero_count;
            continue;
        }
        double total = 0.0;
        for (int j = 0; j < c; ++j) {
            row[j] = std::pow(d(i, medoids[static_cast<std::size_t>(j)]), exponent);
            total += row[j];
        }
        for (int j = 0; j < c; ++j) row[j] /= total;
    }
    return FuzzyPartition(c, n, std::move(u));
}

/// Medoid update: per-cluster argmin of the membership-weighted distance
/// column sum; ties to the lowest index, distinctness enforced in cluster
/// order.
inline std::vector<int> fcmdd_update_medoids(const DissimilarityMatrix& d,
                                             const FuzzyPartition& u, double beta) {
    const int c = u.cluster_count();
    const int n = d.size();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(c));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < c; ++j) {
        for (int i = 0; i < n; ++i) w[i] = std::pow(u.membership(i, j), beta);
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

inline double fcmdd_objective(const DissimilarityMatrix& d, const FuzzyPartition& u,
                              const std::vector<int>& medoids, double beta) {
    double total = 0.0;
    for (int i = 0; i < u.object_count(); ++i)
        for (int j = 0; j < u.cluster_count(); ++j)
            total += std::pow(u.membership(i, j), beta) *
                     d(i, medoids[static_cast<std::size_t>(j)]);
    return total;
}

struct FcmddResult {
    FuzzyPartition memberships;
    std::vector<int> medoids;
    double objective = 0.0;
    std::vector<double> trace;
    int iterations = 0;
    bool converged = false;
};

/// Alternates membership and medoid updates until the medoid list repeats or
/// max_iter is reached.
inline FcmddResult fcmdd_cluster(const DissimilarityMatrix& d, int c, const FcmddParams& params,
                                 const std::vector<int>& init) {
    params.validate();
    if (c < 2) throw std::invalid_argument("fcmdd: need at least 2 clusters");
    if (c > d.size()) throw std::invalid_argument("fcmdd: need at least as many objects as clusters");
    if (static_cast<int>(init.size()) != c)
        throw std::invalid_argument("fcmdd: init must provide one medoid per cluster");
    {
        std::vector<int> sorted = init;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("fcmdd: initial medoids must be distinct");
    }

    std::vector<int> medoids = init;
    std::vector<double> trace;
    std::optional<FuzzyPartition> u;
    bool converged = false;
    int iter = 0;
    while (iter < params.max_iter && !converged) {
        ++iter;
        u = fcmdd_update_memberships(d, medoids, params.beta);
        std::vector<int> next = fcmdd_update_medoids(d, *u, params.beta);
        trace.push_back(fcmdd_objective(d, *u, next, params.beta));
        converged = (next == medoids);
        medoids = std::move(next);
    }
    return FcmddResult{std::move(*u), std::move(medoids), trace.back(), std::move(trace),
                       iter, converged};
}

/// Crisp labels by maximum membership; ties to the lowest cluster index.
inline std::vector<int> harden_max_membership(const FuzzyPartition& u) {
    std::vector<int> labels(static_cast<std::size_t>(u.object_count()), 0);
    for (int i = 0; i < u.object_count(); ++i) {
        int best = 0;
        for (int j = 1; j < u.cluster_count(); ++j)
            if (u.membership(i, j) > u.membership(i, best)) best = j;
        labels[i] = best;
    }
    return labels;
}

}  // namespace credal
