#include <polarwin/perm_search.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <set>

#include "test_util.hpp"

using polarwin::Kernel;
using polarwin::PermutationCandidate;
using polarwin::SearchResult;

namespace {
Kernel k4() { return Kernel::create(testutil::example_k4(), "k4"); }
}

TEST_CASE("initial threshold from row-weight multisets") {
    CHECK(polarwin::initial_threshold(k4()) == 3);
    CHECK(polarwin::initial_threshold(Kernel::create(polarwin::arikan_kernel(4))) == 16);

    // all rows of odd weight > 1: only weight-1 rows could match, none do
    Kernel odd = Kernel::create(polarwin::BitMatrix::from_rows(
        {"1110", "0111", "1101", "1011"}));
    CHECK(polarwin::initial_threshold(odd) == 0);
}

TEST_CASE("calculate_metric on the 4x4 example") {
    Kernel k = k4();
    std::vector<std::uint8_t> all{0, 1, 2, 3};

    polarwin::MetricResult r = polarwin::calculate_metric(k, {}, 0, all);
    CHECK(r.metric == 3);
    CHECK(r.rel == std::vector<std::uint8_t>{0, 1, 3});

    // the other first columns only keep one row
    for (std::size_t col : {1u, 2u, 3u})
        CHECK(polarwin::calculate_metric(k, {}, col, all).metric == 1);

    CHECK_THROWS_AS(polarwin::calculate_metric(k, {0, 1}, 1, all), std::invalid_argument);

    // replay the two full survivor paths: metric stays >= 3 at every step
    for (std::vector<std::uint8_t> path : {std::vector<std::uint8_t>{0, 1, 3, 2},
                                           std::vector<std::uint8_t>{0, 3, 1, 2}}) {
        std::vector<std::uint8_t> kappa;
        std::vector<std::uint8_t> rho = all;
        for (std::uint8_t col : path) {
            polarwin::MetricResult step = polarwin::calculate_metric(k, kappa, col, rho);
            CHECK(step.metric >= 3);
            kappa = step.cel;
            rho = step.rel;
        }
    }
}

TEST_CASE("identity prefixes of the Arikan kernel keep full metric") {
    Kernel ka = Kernel::create(polarwin::arikan_kernel(3));
    std::vector<std::uint8_t> kappa;
    std::vector<std::uint8_t> rho(8);
    std::iota(rho.begin(), rho.end(), 0);
    for (std::size_t col = 0; col < 8; ++col) {
        polarwin::MetricResult r = polarwin::calculate_metric(ka, kappa, col, rho);
        CHECK(r.metric == 8);
        kappa = r.cel;
        rho = r.rel;
    }
}

TEST_CASE("search on the 4x4 example finds exactly the two known survivors") {
    SearchResult res = polarwin::find_good_permutations(k4(), 3);
    CHECK(res.threshold_used == 3);
    REQUIRE(res.candidates.size() == 2);
    std::set<std::vector<std::size_t>> got;
    for (const auto& c : res.candidates) {
        CHECK(c.metric >= 3);
        got.insert(c.permutation);
    }
    std::set<std::vector<std::size_t>> expect{{0, 1, 3, 2}, {0, 3, 1, 2}};
    CHECK(got == expect);
}

TEST_CASE("search keeps the identity for the Arikan kernel") {
    Kernel ka = Kernel::create(polarwin::arikan_kernel(3));
    SearchResult res = polarwin::find_good_permutations(ka, 8);
    CHECK(res.threshold_used == 8);
    bool has_identity = false;
    for (const auto& c : res.candidates) {
        std::vector<std::size_t> id(8);
        std::iota(id.begin(), id.end(), 0);
        if (c.permutation == id) {
            has_identity = true;
            CHECK(c.metric == 8);
        }
    }
    CHECK(has_identity);

    // every survivor at threshold l has an all-empty window profile
    polarwin::BestPermutation best = polarwin::select_best(ka, res.candidates);
    std::uint64_t c_sum = 0;
    for (std::size_t i = 0; i < 8; ++i) c_sum += polarwin::arikan_channel_cost(i, 3);
    CHECK(best.cost == c_sum);
}

TEST_CASE("search results are deterministic and well-formed") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        Kernel k = Kernel::create(testutil::random_invertible(4, rng));
        std::size_t m_t = polarwin::initial_threshold(k);
        SearchResult a = polarwin::find_good_permutations(k, m_t);
        SearchResult b = polarwin::find_good_permutations(k, m_t);
        REQUIRE(a.candidates.size() == b.candidates.size());
        CHECK(a.threshold_used == b.threshold_used);
        std::set<std::vector<std::size_t>> seen;
        for (std::size_t i = 0; i < a.candidates.size(); ++i) {
            CHECK(a.candidates[i].permutation == b.candidates[i].permutation);
            CHECK(a.candidates[i].metric == b.candidates[i].metric);
            // bijection & no duplicates
            std::vector<std::size_t> sorted = a.candidates[i].permutation;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t v = 0; v < sorted.size(); ++v) REQUIRE(sorted[v] == v);
            REQUIRE(seen.insert(a.candidates[i].permutation).second);
            // replay: metric at least the threshold in force when admitted
            std::vector<std::uint8_t> kappa;
            std::vector<std::uint8_t> rho(k.l);
            std::iota(rho.begin(), rho.end(), 0);
            std::size_t final_metric = 0;
            for (std::size_t col : a.candidates[i].permutation) {
                polarwin::MetricResult step = polarwin::calculate_metric(k, kappa, col, rho);
                REQUIRE(step.metric >= a.threshold_used);
                kappa = step.cel;
                rho = step.rel;
                final_metric = step.metric;
            }
            REQUIRE(final_metric == a.candidates[i].metric);
        }
    }
}

TEST_CASE("beam cap overflows loudly") {
    Kernel ka = Kernel::create(polarwin::arikan_kernel(4));
    CHECK_THROWS_AS(polarwin::find_good_permutations(ka, 0, 1), polarwin::BeamOverflowError);
}

TEST_CASE("select_best on the 4x4 example") {
    Kernel k = k4();
    SearchResult res = polarwin::find_good_permutations(k, 3);
    polarwin::BestPermutation best = polarwin::select_best(k, res.candidates);
    REQUIRE(best.ranked.size() == 2);
    CHECK(best.ranked[0].cost <= best.ranked[1].cost);
    CHECK(best.cost == best.ranked[0].cost);
    CHECK(best.permutation == best.ranked[0].permutation);
    CHECK(polarwin::permute_columns(k, best.permutation).matrix == best.kernel.matrix);

    // the permuted kernel can never cost more than the original when the
    // identity is among the candidates
    std::vector<PermutationCandidate> with_id = res.candidates;
    PermutationCandidate id;
    id.permutation = {0, 1, 2, 3};
    with_id.push_back(id);
    polarwin::BestPermutation best2 = polarwin::select_best(k, with_id);
    std::uint64_t base = polarwin::kernel_cost(polarwin::window_profile(k)).total;
    CHECK(best2.cost <= base);

    CHECK_THROWS_AS(polarwin::select_best(k, {}), std::invalid_argument);
}

TEST_CASE("single candidate is returned unchanged") {
    Kernel k = k4();
    PermutationCandidate only;
    only.permutation = {0, 1, 3, 2};
    only.metric = 3;
    polarwin::BestPermutation best = polarwin::select_best(k, {only});
    CHECK(best.permutation == only.permutation);
}
