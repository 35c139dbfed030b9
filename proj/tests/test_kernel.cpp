#include <polarwin/kernel.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "test_util.hpp"

using polarwin::BitMatrix;
using polarwin::Kernel;

namespace {

Kernel k4() { return Kernel::create(testutil::example_k4(), "k4"); }

/// Exhaustive reference check: some column permutation yields an upper
/// triangular matrix (row order fixed).
bool upper_triangularizable_exhaustive(const BitMatrix& m) {
    std::vector<std::size_t> perm(m.rows());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool upper = true;
        for (std::size_t r = 0; r < m.rows() && upper; ++r)
            for (std::size_t c = 0; c < r && upper; ++c)
                if (m.get(r, perm[c])) upper = false;
        if (upper) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

TEST_CASE("kernel validation") {
    CHECK_THROWS_AS(Kernel::create(BitMatrix(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(Kernel::create(BitMatrix(4, 4)), polarwin::SingularMatrixError);
    Kernel k = k4();
    CHECK(k.l == 4);
    CHECK(k.t == 2);
}

TEST_CASE("is_polarizing on the canonical cases") {
    CHECK(polarwin::is_polarizing(Kernel::create(polarwin::arikan_f2())));
    CHECK_FALSE(polarwin::is_polarizing(Kernel::create(BitMatrix::identity(4))));
    CHECK_FALSE(polarwin::is_polarizing(
        Kernel::create(BitMatrix::from_rows({"11", "01"}))));
    CHECK(polarwin::is_polarizing(Kernel::create(polarwin::arikan_kernel(3))));
}

TEST_CASE("is_polarizing agrees with exhaustive column permutation check") {
    std::mt19937 rng(31);
    int polarizing_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        BitMatrix m = testutil::random_invertible(4, rng);
        Kernel k = Kernel::create(m);
        bool expect = !upper_triangularizable_exhaustive(m);
        CHECK(polarwin::is_polarizing(k) == expect);
        polarizing_seen += expect;
    }
    CHECK(polarizing_seen > 0);

    // The 4x4 search example: lower triangular as given, but no column
    // permutation makes it upper triangular (row 3 has weight 2).
    CHECK_FALSE(upper_triangularizable_exhaustive(testutil::example_k4()));
    CHECK(polarwin::is_polarizing(k4()));
}

TEST_CASE("permute_columns conventions") {
    Kernel k = k4();
    std::vector<std::size_t> id{0, 1, 2, 3};
    CHECK(polarwin::permute_columns(k, id).matrix == k.matrix);

    // 1-based (1,2,4,3): swap the last two columns.
    std::vector<std::size_t> swap34{0, 1, 3, 2};
    Kernel kp = polarwin::permute_columns(k, swap34);
    CHECK(kp.matrix == BitMatrix::from_rows({"1000", "1100", "0001", "1010"}));

    Kernel back = polarwin::permute_columns(kp, polarwin::inverse_permutation(swap34));
    CHECK(back.matrix == k.matrix);

    CHECK_THROWS_AS(polarwin::permute_columns(k, {0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("hamming weight multisets") {
    CHECK(polarwin::hamming_weight_multiset(testutil::example_k4()) ==
          std::vector<std::size_t>{1, 1, 2, 2});
    CHECK(polarwin::hamming_weight_multiset(polarwin::arikan_kernel(2)) ==
          std::vector<std::size_t>{1, 2, 2, 4});
    CHECK(polarwin::hamming_weight_multiset(BitMatrix::from_rows({"111", "111", "111"})) ==
          std::vector<std::size_t>{3, 3, 3});
}

TEST_CASE("partial distances and error exponent") {
    Kernel f2 = Kernel::create(polarwin::arikan_f2());
    CHECK(polarwin::partial_distances(f2) == std::vector<std::size_t>{1, 2});
    CHECK(polarwin::error_exponent(f2) == Catch::Approx(0.5).epsilon(1e-12));

    Kernel ka4 = Kernel::create(polarwin::arikan_kernel(2));
    CHECK(polarwin::partial_distances(ka4) == std::vector<std::size_t>{1, 2, 2, 4});
    CHECK(polarwin::error_exponent(ka4) == Catch::Approx(0.5).epsilon(1e-12));

    CHECK(polarwin::error_exponent(Kernel::create(polarwin::arikan_kernel(4))) ==
          Catch::Approx(0.5).epsilon(1e-12));

    CHECK(polarwin::partial_distances(k4()) == std::vector<std::size_t>{1, 2, 1, 2});

    Kernel big = Kernel::create(polarwin::arikan_kernel(5));
    CHECK_THROWS_AS(polarwin::partial_distances(big), polarwin::UnsupportedSizeError);
}

TEST_CASE("column permutations preserve polarization and partial distances") {
    std::mt19937 rng(41);
    Kernel k = k4();
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::vector<std::size_t> base_d = polarwin::partial_distances(k);
    bool base_p = polarwin::is_polarizing(k);
    do {
        Kernel kp = polarwin::permute_columns(k, perm);
        CHECK(polarwin::partial_distances(kp) == base_d);
        CHECK(polarwin::is_polarizing(kp) == base_p);
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (int trial = 0; trial < 10; ++trial) {
        Kernel k8 = Kernel::create(testutil::random_invertible(8, rng));
        std::vector<std::size_t> p(8);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        Kernel k8p = polarwin::permute_columns(k8, p);
        CHECK(polarwin::partial_distances(k8p) == polarwin::partial_distances(k8));
        CHECK(polarwin::is_polarizing(k8p) == polarwin::is_polarizing(k8));
    }
}
