#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k3lat/snf.hpp"

using namespace k3lat;

namespace {

IMat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IMat m(rows, IVec(cols));
    for (auto& row : m)
        for (auto& x : row) x = d(rng);
    return m;
}

bool is_unimodular(const IMat& m) {
    Int d = imat_det(m);
    return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("smith normal form on random matrices") {
    std::mt19937_64 rng(20260826);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int iter = 0; iter < 1200; ++iter) {
        std::size_t r = dim(rng), c = dim(rng);
        IMat m = random_matrix(rng, r, c, 9);
        auto s = smith_normal_form(m);

        REQUIRE(is_unimodular(s.u));
        REQUIRE(is_unimodular(s.v));
        REQUIRE(imat_mul(imat_mul(s.u, m), s.v) == s.d);

        // diagonal, nonnegative, divisibility chain
        std::vector<Int> diag;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                if (i == j) {
                    REQUIRE(s.d[i][j] >= 0);
                    diag.push_back(s.d[i][j]);
                } else {
                    REQUIRE(s.d[i][j] == 0);
                }
            }
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i] == 0) {
                REQUIRE(diag[i + 1] == 0);
            } else {
                REQUIRE(diag[i + 1] % diag[i] == 0);
            }
        }
    }
}

TEST_CASE("smith normal form fixed examples") {
    auto s = smith_normal_form({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
    // det = 624, gcd of entries 2, gcd of 2x2 minors 4 => divisors 2, 2, 156
    REQUIRE(s.d[0][0] == 2);
    REQUIRE(s.d[1][1] == 2);
    REQUIRE(s.d[2][2] == 156);

    auto id = smith_normal_form({{1, 0}, {0, 1}});
    REQUIRE(id.d == IMat{{1, 0}, {0, 1}});
}

TEST_CASE("square matrix: product of elementary divisors equals |det|") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        IMat m = random_matrix(rng, 4, 4, 6);
        auto s = smith_normal_form(m);
        Int prod = 1;
        for (std::size_t i = 0; i < 4; ++i) prod *= s.d[i][i];
        REQUIRE(prod == abs(imat_det(m)));
    }
}

TEST_CASE("integer kernel") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        IMat m = random_matrix(rng, dim(rng), dim(rng), 4);
        auto ker = integer_kernel(m);
        for (const auto& v : ker) {
            IVec mv = imat_vec(m, v);
            for (const auto& x : mv) REQUIRE(x == 0);
            bool nonzero = false;
            for (const auto& x : v) nonzero = nonzero || x != 0;
            REQUIRE(nonzero);
        }
    }

    // rank-1 map on Z^2: kernel generated by a primitive vector
    auto ker = integer_kernel({{2, 4}});
    REQUIRE(ker.size() == 1);
    REQUIRE(abs(ker[0][0]) == 2);
    REQUIRE(abs(ker[0][1]) == 1);
}
