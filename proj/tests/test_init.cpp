#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "credal/init.hpp"
#include "oracles.hpp"

using namespace credal;

TEST_CASE("farthest-first seeding", "[init]") {
    DissimilarityMatrix d(3, {0, 1, 5, 1, 0, 4, 5, 4, 0});
    SECTION("picks the point with the largest min-distance") {
        CHECK(farthest_first(d, 2, 0) == std::vector<int>{0, 2});
    }
    SECTION("last remaining candidate completes the list") {
        CHECK(farthest_first(d, 3, 0) == std::vector<int>{0, 2, 1});
    }
    SECTION("ties go to the lowest index") {
        DissimilarityMatrix eq(3, {0, 1, 1, 1, 0, 1, 1, 1, 0});
        CHECK(farthest_first(eq, 2, 0) == std::vector<int>{0, 1});
    }
    SECTION("guards") {
        CHECK_THROWS_AS(farthest_first(d, 4, 0), std::invalid_argument);
        CHECK_THROWS_AS(farthest_first(d, 2, 9), std::invalid_argument);
    }
}

TEST_CASE("farthest-first output is distinct and anchored at first", "[init]") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 10);
        DissimilarityMatrix d(n, oracles::random_symmetric(n, rng));
        const int first = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        const int c = 2 + static_cast<int>(rng() % 3);
        auto medoids = farthest_first(d, c, first);
        CHECK(medoids[0] == first);
        std::vector<int> sorted = medoids;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("farthest-first is equivariant under object permutation", "[init]") {
    std::mt19937_64 rng(77);
    const int n = 9;
    const auto values = oracles::random_symmetric(n, rng);  // ties have measure zero
    DissimilarityMatrix d(n, values);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> permuted(values.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            permuted[static_cast<std::size_t>(perm[i]) * n + static_cast<std::size_t>(perm[j])] =
                values[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
    DissimilarityMatrix dp(n, permuted);

    const int first = 3;
    auto base = farthest_first(d, 4, first);
    auto mapped = farthest_first(dp, 4, perm[static_cast<std::size_t>(first)]);
    for (std::size_t k = 0; k < base.size(); ++k)
        CHECK(mapped[k] == perm[static_cast<std::size_t>(base[k])]);
}

TEST_CASE("random medoids are seeded and distinct", "[init]") {
    auto a = random_medoids(20, 5, 42);
    auto b = random_medoids(20, 5, 42);
    auto c = random_medoids(20, 5, 43);
    CHECK(a == b);
    CHECK(a != c);
    std::sort(a.begin(), a.end());
    CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
    CHECK(a.front() >= 0);
    CHECK(a.back() < 20);
}

TEST_CASE("init spec resolution", "[init]") {
    DissimilarityMatrix d(4, {0, 1, 2, 3, 1, 0, 4, 5, 2, 4, 0, 6, 3, 5, 6, 0});
    SECTION("explicit indices validated") {
        InitSpec spec;
        spec.mode = InitMode::Explicit;
        spec.indices = {0, 2};
        CHECK(choose_initial_medoids(d, 2, spec) == std::vector<int>{0, 2});
        spec.indices = {0, 0};
        CHECK_THROWS_AS(choose_initial_medoids(d, 2, spec), std::invalid_argument);
        spec.indices = {0, 9};
        CHECK_THROWS_AS(choose_initial_medoids(d, 2, spec), std::invalid_argument);
    }
    SECTION("farthest-first with explicit first") {
        InitSpec spec;
        spec.mode = InitMode::FarthestFirst;
        spec.first = 1;
        auto m = choose_initial_medoids(d, 2, spec);
        CHECK(m[0] == 1);
    }
    SECTION("seeded modes are reproducible") {
        InitSpec spec;
        spec.mode = InitMode::Random;
        spec.seed = 9;
        CHECK(choose_initial_medoids(d, 2, spec) == choose_initial_medoids(d, 2, spec));
    }
}
