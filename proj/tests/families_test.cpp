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

#include "equilab/families.hpp"

using namespace equilab;

namespace {
const IntPolynomial kT = IntPolynomial::variable();
const IntPolynomial kTm1{-1, 1};
const IntPolynomial kTp1{1, 1};
}  // namespace

TEST_CASE("check_nice") {
    auto nice = check_nice({kT, kTm1, kTp1});
    REQUIRE(nice.ok());
    CHECK(nice.family->degree_sum == 3);
    CHECK(nice.family->d_main == 4);

    auto repeated = check_nice({kTm1, kTm1});
    CHECK_FALSE(repeated.ok());
    REQUIRE(repeated.violations.size() == 1);
    CHECK(repeated.violations[0].find("repeated root") != std::string::npos);

    auto constant = check_nice({IntPolynomial{5}, kTm1});
    CHECK_FALSE(constant.ok());
    CHECK(constant.violations[0].find("constant") != std::string::npos);

    CHECK_THROWS_AS(check_nice({}), std::invalid_argument);
}

TEST_CASE("good prime predicate") {
    NiceFamily fam = *check_nice({kT, kTm1, kTp1}).family;

    auto p17 = is_good_prime(fam, 17);
    CHECK(p17.good());

    auto p13 = is_good_prime(fam, 13);
    CHECK_FALSE(p13.good());
    CHECK(p13.greater_than_5);
    CHECK_FALSE(p13.above_degree_square);  // 13 <= 16
    CHECK(p13.leading_coeffs_ok);
    CHECK(p13.discriminant_ok);

    auto p2 = is_good_prime(fam, 2);
    CHECK_FALSE(p2.good());
    CHECK_FALSE(p2.greater_than_5);
    CHECK_FALSE(p2.above_degree_square);
    CHECK_FALSE(p2.discriminant_ok);  // disc(T^3 - T) = 4

    CHECK_THROWS_AS(is_good_prime(fam, 15), std::invalid_argument);
}

TEST_CASE("good primes in ranges") {
    NiceFamily fam = *check_nice({kT, kTm1, kTp1}).family;
    CHECK(good_primes_in_range(fam, 2, 30) == std::vector<std::uint64_t>{17, 19, 23, 29});
    CHECK(good_primes_in_range(fam, 10, 9).empty());

    NiceFamily phi_only = *check_nice({kTm1}).family;
    CHECK(good_primes_in_range(phi_only, 2, 10) == std::vector<std::uint64_t>{7});
}

TEST_CASE("good primes for the flagship family are exactly p >= 17") {
    NiceFamily fam = *check_nice({kT, kTm1, kTp1}).family;
    std::vector<std::uint64_t> expected;
    for_each_prime(2, 200, [&](std::uint64_t p) {
        if (p >= 17) expected.push_back(p);
    });
    CHECK(good_primes_in_range(fam, 2, 200) == expected);
}

TEST_CASE("primes dividing the discriminant are never good") {
    // product T(T-5) has discriminant 25
    NiceFamily fam = *check_nice({kT, IntPolynomial{-5, 1}}).family;
    CHECK(discriminant(fam.product()) == 25);
    auto p5 = is_good_prime(fam, 5);
    CHECK_FALSE(p5.discriminant_ok);
    CHECK_FALSE(p5.good());

    // cross-check over a range: every skipped prime > bound must divide
    // a leading coefficient or the discriminant
    NiceFamily fam2 = *check_nice({kTm1, IntPolynomial{-3, 7}}).family;  // 7T - 3
    const BigInt disc = discriminant(fam2.product());
    const std::uint64_t dm = fam2.d_main;
    auto good = good_primes_in_range(fam2, 2, 300);
    for_each_prime(2, 300, [&](std::uint64_t p) {
        bool listed = std::find(good.begin(), good.end(), p) != good.end();
        if (p <= 5 || p <= dm * dm) {
            CHECK_FALSE(listed);
            return;
        }
        bool divides_lc = (BigInt(7) % BigInt(p)) == 0;
        bool divides_disc = disc % BigInt(p) == 0;
        CHECK(listed == (!divides_lc && !divides_disc));
    });
}

TEST_CASE("delta") {
    CHECK(delta(17).exact == BigRat(1, 17));
    CHECK(delta(15).exact == BigRat(8, 15));
    CHECK(delta(12).exact == BigRat(5, 6));
    CHECK(delta(12).value == Catch::Approx(5.0 / 6.0));
    CHECK_THROWS_AS(delta(1), std::invalid_argument);
    CHECK_THROWS_AS(delta(0), std::invalid_argument);
}

TEST_CASE("delta is additive over coprime squarefree arguments") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::uint64_t> dist(2, 5000);
    auto squarefree = [](std::uint64_t n) {
        for (const auto& [p, e] : factorize_u64(n))
            if (e > 1) return false;
        return true;
    };
    int done = 0;
    while (done < 100) {
        std::uint64_t a = dist(rng), b = dist(rng);
        if (std::gcd(a, b) != 1 || !squarefree(a) || !squarefree(b)) continue;
        CHECK(delta(a * b).exact == delta(a).exact + delta(b).exact);
        ++done;
    }
}
