#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "credal/core.hpp"

namespace credal {

enum class InitMode {
    Explicit,       // caller supplies the full medoid list
    FarthestFirst,  // greedy max-min spread from a first medoid
    Random,         // seeded distinct sample
};

struct InitSpec {
    InitMode mode = InitMode::FarthestFirst;
    std::vector<int> indices;        // Explicit mode
    std::uint64_t seed = 0;          // Random mode, and FarthestFirst without `first`
    std::optional<int> first;        // FarthestFirst: explicit first medoid
};

/// Greedy farthest-first seeding: start at `first`, then repeatedly take the
/// object whose minimum distance to the chosen medoids is largest. Ties go to
/// the lowest object index.
inline std::vector<int> farthest_first(const DissimilarityMatrix& d, int c, int first) {
    const int n = d.size();
    if (c < 1 || c > n) throw std::invalid_argument("farthest_first: cluster count out of range");
    if (first < 0 || first >= n) throw std::invalid_argument("farthest_first: first index out of range");
    std::vector<int> medoids{first};
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    chosen[static_cast<std::size_t>(first)] = 1;
    while (static_cast<int>(medoids.size()) < c) {
        int best = -1;
        double best_score = -1.0;
        for (int i = 0; i < n; ++i) {
            if (chosen[static_cast<std::size_t>(i)]) continue;
            double nearest = d(i, medoids[0]);
            for (std::size_t k = 1; k < medoids.size(); ++k)
                nearest = std::min(nearest, d(i, medoids[k]));
            if (nearest > best_score) {
                best_score = nearest;
                best = i;
            }
        }
        medoids.push_back(best);
        chosen[static_cast<std::size_t>(best)] = 1;
    }
    return medoids;
}

/// Distinct random medoids from a seeded generator. Selection is a
/// partial Fisher-Yates over the index list, so the result depends only on
/// the mt19937_64 stream, not on library distribution internals.
inline std::vector<int> random_medoids(int n, int c, std::uint64_t seed) {
    if (c < 1 || c > n) throw std::invalid_argument("random_medoids: cluster count out of range");
    std::mt19937_64 rng(seed);
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j) {
        const std::size_t pick = j + static_cast<std::size_t>(rng() % (n - j));
        std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
        out.push_back(pool[static_cast<std::size_t>(j)]);
    }
    return out;
}

/// Resolve an InitSpec to a concrete medoid list for the given data.
inline std::vector<int> choose_initial_medoids(const DissimilarityMatrix& d, int c,
                                               const InitSpec& spec) {
    switch (spec.mode) {
        case InitMode::Explicit: {
            if (static_cast<int>(spec.indices.size()) != c)
                throw std::invalid_argument("init: expected " + std::to_string(c) +
                                            " explicit medoid indices");
            for (int v : spec.indices)
                if (v < 0 || v >= d.size())
                    throw std::invalid_argument("init: medoid index out of range");
            for (std::size_t a = 0; a < spec.indices.size(); ++a)
                for (std::size_t b = a + 1; b < spec.indices.size(); ++b)
                    if (spec.indices[a] == spec.indices[b])
                        throw std::invalid_argument("init: explicit medoids must be distinct");
            return spec.indices;
        }
        case InitMode::FarthestFirst: {
            int first = spec.first.value_or(-1);
            if (first < 0) {
                std::mt19937_64 rng(spec.seed);
                first = static_cast<int>(rng() % static_cast<std::uint64_t>(d.size()));
            }
            return farthest_first(d, c, first);
        }
        case InitMode::Random:
            return random_medoids(d.size(), c, spec.seed);
    }
    throw std::invalid_argument("init: unknown mode");
}

}  // namespace credal
