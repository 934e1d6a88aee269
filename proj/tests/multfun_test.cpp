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

#include "equilab/multfun.hpp"

using namespace equilab;

namespace {

// Brute-force P_J^+ by trial-division factorization; test-only oracle.
std::uint64_t jth_largest_oracle(std::uint64_t n, unsigned j) {
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : factorize_u64(n))
        for (unsigned i = 0; i < e; ++i) primes.push_back(p);
    std::sort(primes.rbegin(), primes.rend());
    return j <= primes.size() ? primes[j - 1] : 1;
}

std::uint64_t semismooth_oracle(std::uint64_t x, std::uint64_t y, unsigned j) {
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n)
        if (jth_largest_oracle(n, j) <= y) ++count;
    return count;
}

}  // namespace

TEST_CASE("build_spf") {
    SpfTable t = build_spf(2, 10);
    const std::uint32_t expected[] = {2, 3, 2, 5, 2, 7, 2, 3};
    for (std::uint64_t n = 2; n < 10; ++n) CHECK(t.spf(n) == expected[n - 2]);

    SpfTable t2 = build_spf(100, 104);
    CHECK(t2.spf(100) == 2);
    CHECK(t2.spf(101) == 101);
    CHECK(t2.spf(102) == 2);
    CHECK(t2.spf(103) == 103);

    CHECK_THROWS_AS(build_spf(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_spf(5, 3), std::invalid_argument);
}

TEST_CASE("spf factorization agrees with trial division") {
    SpfTable t = build_spf(2, 20000);
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::uint64_t> dist(1, 19999);
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t n = dist(rng);
        CHECK(t.factorize(n) == factorize_u64(n));
    }
    // quotient chains that leave a narrow table still factor correctly
    SpfTable narrow = build_spf(100, 104);
    CHECK(narrow.factorize(102) == factorize_u64(102));
}

TEST_CASE("evaluate") {
    SpfTable t = build_spf(2, 1000);
    for (const auto& f : {MultiplicativeFunction::identity(), MultiplicativeFunction::euler_phi(),
                          MultiplicativeFunction::sigma(),
                          MultiplicativeFunction::completely_mult(IntPolynomial{1, 0, 1})}) {
        CHECK(evaluate(f, 1, t) == 1);
    }
    CHECK(evaluate(MultiplicativeFunction::euler_phi(), 12, t) == 4);
    CHECK(evaluate(MultiplicativeFunction::sigma(), 6, t) == 12);
    CHECK(evaluate(MultiplicativeFunction::identity(), 60, t) == 60);
    // f(p^e) = F(p)^e differs from the classical totient on prime powers
    auto f = MultiplicativeFunction::completely_mult(IntPolynomial{-1, 1});
    CHECK(evaluate(f, 12, t) == 2);
    CHECK(evaluate(f, 1, t) == 1);
    CHECK_THROWS_AS(evaluate(f, 1000, t), std::out_of_range);
}

TEST_CASE("multiplicativity on coprime pairs") {
    SpfTable t = build_spf(2, 1000001);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<std::uint64_t> dist(2, 1000);
    const MultiplicativeFunction rules[] = {
        MultiplicativeFunction::identity(), MultiplicativeFunction::euler_phi(),
        MultiplicativeFunction::sigma(),
        MultiplicativeFunction::completely_mult(IntPolynomial{2, 1})};
    int done = 0;
    while (done < 10000) {
        std::uint64_t m = dist(rng), n = dist(rng);
        if (std::gcd(m, n) != 1 || m * n > 1000000) continue;
        for (const auto& f : rules) {
            CHECK(evaluate(f, m * n, t) == evaluate(f, m, t) * evaluate(f, n, t));
        }
        ++done;
    }
}

TEST_CASE("euler phi rule matches the rational product formula") {
    SpfTable t = build_spf(2, 10001);
    const auto phi = MultiplicativeFunction::euler_phi();
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        BigRat expected(n, 1);
        for (const auto& [p, e] : factorize_u64(n)) {
            (void)e;
            expected *= BigRat(p - 1, p);
        }
        CHECK(BigRat(evaluate(phi, n, t)) == expected);
    }
}

TEST_CASE("prime power values mod q match the exact values") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<std::uint64_t> pdist(0, 100), qdist(2, 999);
    const MultiplicativeFunction rules[] = {
        MultiplicativeFunction::identity(), MultiplicativeFunction::euler_phi(),
        MultiplicativeFunction::sigma(),
        MultiplicativeFunction::completely_mult(IntPolynomial{-3, 0, 2})};
    auto primes = primes_up_to(600);
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t p = primes[pdist(rng) % primes.size()];
        unsigned e = 1 + static_cast<unsigned>(pdist(rng) % 4);
        std::uint64_t q = qdist(rng);
        for (const auto& f : rules) {
            BigInt exact = f.prime_power_value(p, e) % BigInt(q);
            if (exact < 0) exact += q;
            CHECK(BigInt(f.prime_power_value_mod(p, e, q)) == exact);
        }
    }
}

TEST_CASE("jth largest prime factor") {
    SpfTable t = build_spf(2, 1000);
    CHECK(jth_largest_prime_factor(12, 1, t) == 3);
    CHECK(jth_largest_prime_factor(12, 2, t) == 2);
    CHECK(jth_largest_prime_factor(12, 4, t) == 1);
    CHECK(jth_largest_prime_factor(1, 1, t) == 1);
    CHECK(jth_largest_prime_factor(720, 3, t) == 3);  // 720 = 2^4 * 3^2 * 5
}

TEST_CASE("semismooth counts against enumeration") {
    // no n <= 100 has two prime factors above 10, so nothing is excluded
    auto r = semismooth_count(100, 10, 2);
    CHECK(r.count == semismooth_oracle(100, 10, 2));
    CHECK(r.count == 100);

    auto r2 = semismooth_count(5000, 13, 2);
    CHECK(r2.count == semismooth_oracle(5000, 13, 2));
    auto r3 = semismooth_count(5000, 13, 3);
    CHECK(r3.count == semismooth_oracle(5000, 13, 3));

    // x = y: every n qualifies
    auto rx = semismooth_count(1000, 1000, 2);
    CHECK(rx.count == 1000);

    CHECK_THROWS_AS(semismooth_count(100, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(semismooth_count(5, 10, 2), std::invalid_argument);
}

TEST_CASE("semismooth monotonicity and bounded ratio") {
    const std::uint64_t xs[] = {10000, 100000, 1000000, 10000000};
    const std::uint64_t ys[] = {100, 1000};
    double max_ratio = 0.0;
    for (std::uint64_t x : xs) {
        std::uint64_t prev_y_count = 0;
        for (std::uint64_t y : ys) {
            std::uint64_t prev_j_count = 0;
            for (unsigned J : {2u, 3u}) {
                auto r = semismooth_count(x, y, J, 4);
                CHECK(r.count >= prev_j_count);  // monotone in J
                prev_j_count = r.count;
                if (J == 2) {
                    CHECK(r.count >= prev_y_count);  // monotone in y
                    prev_y_count = r.count;
                }
                max_ratio = std::max(max_ratio, r.ratio);
            }
        }
    }
    CHECK(max_ratio <= 10.0);
}

TEST_CASE("semismooth counts are partition independent") {
    auto a = semismooth_count(200000, 100, 2, 1, 1 << 14);
    auto b = semismooth_count(200000, 100, 2, 4, 1 << 12);
    auto c = semismooth_count(200000, 100, 2, 8, 1 << 16);
    CHECK(a.count == b.count);
    CHECK(a.count == c.count);
}
