/*
   Copyright 2026 The equilab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "equilab/poly.hpp"

using namespace equilab;

namespace {

// Independent resultant oracle: Bareiss fraction-free determinant of the
// Sylvester matrix (first deg G rows from F). Shares no code with the
// library's pseudo-remainder recursion.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

BigInt resultant_oracle(const IntPolynomial& f, const IntPolynomial& g) {
    const int df = f.degree(), dg = g.degree();
    const std::size_t n = static_cast<std::size_t>(df + dg);
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, BigInt(0)));
    for (int row = 0; row < dg; ++row)
        for (int j = 0; j <= df; ++j) m[row][row + j] = f.coeff(static_cast<std::size_t>(df - j));
    for (int row = 0; row < df; ++row)
        for (int j = 0; j <= dg; ++j) m[dg + row][row + j] = g.coeff(static_cast<std::size_t>(dg - j));
    return bareiss_det(std::move(m));
}

IntPolynomial random_poly(std::mt19937& rng, int max_deg, int coeff_bound) {
    std::uniform_int_distribution<int> deg_dist(0, max_deg);
    std::uniform_int_distribution<int> coeff_dist(-coeff_bound, coeff_bound);
    for (;;) {
        int d = deg_dist(rng);
        std::vector<BigInt> coeffs;
        for (int i = 0; i <= d; ++i) coeffs.emplace_back(coeff_dist(rng));
        IntPolynomial f(std::move(coeffs));
        if (!f.is_zero()) return f;
    }
}

}  // namespace

TEST_CASE("eval_mod") {
    CHECK(eval_mod(IntPolynomial{1, 0, 1}, 3, 7) == 3);  // T^2+1 at 3 mod 7
    CHECK(eval_mod(IntPolynomial(), 5, 11) == 0);        // zero polynomial
    CHECK(eval_mod(IntPolynomial{0, -1, 0, 1}, 4, 17) == 9);
    CHECK(eval_mod(IntPolynomial{-1, 1}, BigInt(-3), 7) == 3);  // negative arguments reduce
    CHECK(eval_mod(IntPolynomial{5}, 100, 1) == 0);
    CHECK_THROWS_AS(eval_mod(IntPolynomial{1}, 0, 0), std::invalid_argument);
}

TEST_CASE("derivative") {
    CHECK(derivative(IntPolynomial{1, 0, 1}) == IntPolynomial{0, 2});
    CHECK(derivative(IntPolynomial{5}).is_zero());
    CHECK(derivative(IntPolynomial{0, -1, 0, 1}) == IntPolynomial{-1, 0, 3});
}

TEST_CASE("resultant fixed values") {
    // Convention: res(F, G) = det of the Sylvester matrix with F's rows
    // first, i.e. res(T - a, T - b) = a - b.
    CHECK(resultant(IntPolynomial{0, 1}, IntPolynomial{-1, 1}) == -1);
    CHECK(resultant(IntPolynomial{-2, 1}, IntPolynomial{-5, 1}) == -3);
    CHECK(resultant(IntPolynomial{-2, 1}, IntPolynomial{-5, 1}) ==
          resultant_oracle(IntPolynomial{-2, 1}, IntPolynomial{-5, 1}));
    CHECK(resultant(IntPolynomial{1, 0, 1}, IntPolynomial{0, 2}) == 4);
    CHECK(resultant(IntPolynomial{3}, IntPolynomial{7}) == 1);
    CHECK(resultant(IntPolynomial{-1, 0, 1}, IntPolynomial{-1, 1}) == 0);  // common root
    CHECK_THROWS_AS(resultant(IntPolynomial(), IntPolynomial{1}), std::invalid_argument);
    CHECK_THROWS_AS(resultant(IntPolynomial{1}, IntPolynomial()), std::invalid_argument);
}

TEST_CASE("resultant properties against the Sylvester oracle") {
    std::mt19937 rng(20260810);
    for (int trial = 0; trial < 300; ++trial) {
        IntPolynomial f = random_poly(rng, 4, 10);
        IntPolynomial g = random_poly(rng, 4, 10);
        BigInt r = resultant(f, g);
        CHECK(r == resultant_oracle(f, g));
        BigInt swapped = resultant(g, f);
        BigInt expect = ((f.degree() * g.degree()) % 2 != 0) ? BigInt(-r) : r;
        CHECK(swapped == expect);
    }
}

TEST_CASE("discriminant fixed values") {
    CHECK(discriminant(IntPolynomial{1, 0, 1}) == -4);
    CHECK(discriminant(IntPolynomial{0, -1, 0, 1}) == 4);
    CHECK(discriminant(IntPolynomial{-1, 1}) == 1);
    CHECK_THROWS_AS(discriminant(IntPolynomial{5}), std::invalid_argument);
}

TEST_CASE("discriminant matches closed forms") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-10, 10);
    int done = 0;
    while (done < 100) {
        BigInt a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0) continue;
        IntPolynomial f(std::vector<BigInt>{c, b, a});
        CHECK(discriminant(f) == b * b - 4 * a * c);
        ++done;
    }
    done = 0;
    while (done < 100) {
        BigInt p = dist(rng), q = dist(rng);
        IntPolynomial f(std::vector<BigInt>{q, p, 0, 1});  // T^3 + pT + q
        CHECK(discriminant(f) == -4 * p * p * p - 27 * q * q);
        ++done;
    }
}

TEST_CASE("squarefree over Q") {
    CHECK(is_squarefree_over_q(IntPolynomial{0, -1, 0, 1}));
    CHECK_FALSE(is_squarefree_over_q(IntPolynomial{1, -2, 1}));  // (T-1)^2
    CHECK(is_squarefree_over_q(IntPolynomial{1, 0, 1}));
    CHECK_THROWS_AS(is_squarefree_over_q(IntPolynomial()), std::invalid_argument);
}

TEST_CASE("vanishing discriminant detects repeated roots") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        IntPolynomial f = random_poly(rng, 4, 10);
        if (f.degree() < 1) continue;
        CHECK((discriminant(f) == 0) == !is_squarefree_over_q(f));
    }
}

TEST_CASE("roots mod p") {
    auto roots = roots_mod_p(IntPolynomial{0, -1, 0, 1}, 5);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == ModPRoot{0, 1});
    CHECK(roots[1] == ModPRoot{1, 1});
    CHECK(roots[2] == ModPRoot{4, 1});

    auto dbl = roots_mod_p(IntPolynomial{1, -2, 1}, 7);
    REQUIRE(dbl.size() == 1);
    CHECK(dbl[0] == ModPRoot{1, 2});

    CHECK(roots_mod_p(IntPolynomial{1, 0, 1}, 7).empty());
    CHECK_THROWS_AS(roots_mod_p(IntPolynomial{7, 14}, 7), std::invalid_argument);
}

TEST_CASE("roots mod p re-evaluate to zero and respect degree") {
    std::mt19937 rng(2024);
    const std::uint64_t primes[] = {3, 5, 7, 11, 13};
    for (int trial = 0; trial < 200; ++trial) {
        IntPolynomial f = random_poly(rng, 5, 20);
        std::uint64_t p = primes[static_cast<std::size_t>(trial) % 5];
        auto reduced = reduce_mod_p(f, p);
        if (reduced.empty()) continue;
        unsigned mult_sum = 0;
        for (const ModPRoot& root : roots_mod_p(f, p)) {
            CHECK(eval_mod(f, root.residue, p) == 0);
            mult_sum += root.multiplicity;
        }
        CHECK(mult_sum <= reduced.size() - 1);
    }
}

TEST_CASE("p-content valuation") {
    CHECK(p_content_valuation(IntPolynomial{1, 2}, 3) == 0);
    CHECK(p_content_valuation(IntPolynomial{3, 0, 9}, 3) == 1);
    CHECK(p_content_valuation(IntPolynomial{0, 49}, 7) == 2);
    CHECK_THROWS_AS(p_content_valuation(IntPolynomial(), 3), std::invalid_argument);
}
