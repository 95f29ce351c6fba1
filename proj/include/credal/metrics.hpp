#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "credal/core.hpp"

namespace credal {

// ---------------------------------------------------------------------------
// Classical pair-counting metrics on crisp labels
// ---------------------------------------------------------------------------

struct PairCounts {
    std::uint64_t a = 0;        // same in both partitions
    std::uint64_t b = 0;        // different in both
    std::uint64_t c_count = 0;  // same in prediction, different in reference
    std::uint64_t d_count = 0;  // same in reference, different in prediction

    std::uint64_t total() const { return a + b + c_count + d_count; }
};

inline PairCounts count_pairs(const std::vector<int>& pred, const std::vector<int>& ref) {
    if (pred.size() != ref.size())
        throw std::domain_error("pair counts: label vectors differ in length");
    if (pred.size() < 2) throw std::domain_error("pair counts: need at least two objects");
    PairCounts pc;
    const std::size_t n = pred.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_pred = pred[i] == pred[j];
            const bool same_ref = ref[i] == ref[j];
            if (same_pred && same_ref) ++pc.a;
            else if (!same_pred && !same_ref) ++pc.b;
            else if (same_pred) ++pc.c_count;
            else ++pc.d_count;
        }
    }
    return pc;
}

struct ClassicMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double rand_index = 0.0;
    PairCounts counts;

    bool precision_degenerate = false;  // a + c = 0, value defined as 1
    bool recall_degenerate = false;     // a + d = 0, value defined as 1
};

inline ClassicMetrics precision_recall_ri(const std::vector<int>& pred,
                                          const std::vector<int>& ref) {
    ClassicMetrics m;
    m.counts = count_pairs(pred, ref);
    const auto& pc = m.counts;
    m.precision_degenerate = (pc.a + pc.c_count) == 0;
    m.recall_degenerate = (pc.a + pc.d_count) == 0;
    m.precision = m.precision_degenerate
                      ? 1.0
                      : static_cast<double>(pc.a) / static_cast<double>(pc.a + pc.c_count);
    m.recall = m.recall_degenerate
                   ? 1.0
                   : static_cast<double>(pc.a) / static_cast<double>(pc.a + pc.d_count);
    m.rand_index = static_cast<double>(pc.a + pc.b) / static_cast<double>(pc.total());
    return m;
}

// ---------------------------------------------------------------------------
// Evidential metrics on hard credal labels
// ---------------------------------------------------------------------------

struct EvidentialPairCounts {
    std::uint64_t n_e = 0;     // pairs sharing the same specific singleton label
    std::uint64_t n_er = 0;    // of those, pairs also together in the reference
    std::uint64_t n_r = 0;     // pairs together in the reference
    std::uint64_t a_star = 0;  // equals n_er
    std::uint64_t b_star = 0;  // singleton labels differing, reference differing
};

struct EvidentialMetrics {
    double ep = 0.0;
    double er = 0.0;
    double eri = 0.0;
    EvidentialPairCounts counts;

    bool ep_degenerate = false;  // N_e = 0, value defined as 1
    bool er_degenerate = false;  // N_r = 0, value defined as 1
};

/// EP/ER/ERI over hard credal labels. Only pairs where both objects carry a
/// singleton label enter a* and b*; pairs with an empty-set or meta label
/// count toward neither.
inline EvidentialMetrics evidential_metrics(const std::vector<FocalSet>& hard,
                                            const std::vector<int>& ref) {
    if (hard.size() != ref.size())
        throw std::domain_error("evidential metrics: label vectors differ in length");
    if (hard.size() < 2) throw std::domain_error("evidential metrics: need at least two objects");
    EvidentialMetrics m;
    auto& pc = m.counts;
    const std::size_t n = hard.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool singleton_i = hard[i].cardinality() == 1;
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool singleton_j = hard[j].cardinality() == 1;
            const bool ref_same = ref[i] == ref[j];
            if (ref_same) ++pc.n_r;
            if (singleton_i && singleton_j) {
                if (hard[i] == hard[j]) {
                    ++pc.n_e;
                    if (ref_same) ++pc.n_er;
                } else if (!ref_same) {
                    ++pc.b_star;
                }
            }
        }
    }
    pc.a_star = pc.n_er;
    m.ep_degenerate = pc.n_e == 0;
    m.er_degenerate = pc.n_r == 0;
    m.ep = m.ep_degenerate ? 1.0 : static_cast<double>(pc.n_er) / static_cast<double>(pc.n_e);
    m.er = m.er_degenerate ? 1.0 : static_cast<double>(pc.n_er) / static_cast<double>(pc.n_r);
    const double total = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    m.eri = static_cast<double>(pc.a_star + pc.b_star) / total;
    return m;
}

/// Crisp labels viewed as hard credal labels (singleton per object).
inline std::vector<FocalSet> crisp_to_singletons(const std::vector<int>& labels) {
    std::vector<FocalSet> out;
    out.reserve(labels.size());
    for (int l : labels) {
        if (l < 0 || l >= kMaxClusters)
            throw std::domain_error("crisp label out of frame range");
        out.push_back(FocalSet::singleton(l));
    }
    return out;
}

}  // namespace credal
