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

#ifndef EQUILAB_FAMILIES_HPP
#define EQUILAB_FAMILIES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equilab/modmath.hpp"
#include "equilab/poly.hpp"

namespace equilab {

/// An ordered family F_1..F_K of nonconstant integer polynomials whose
/// product is squarefree over Q. Carries both degree constants used by the
/// character-sum bounds: `degree_sum` is the plain sum of degrees of the
/// polynomial list (the D that a bound receives for exactly the list it is
/// handed), while `d_main` = 1 + degree_sum (the D used to size J in the
/// counting experiments, which corresponds to the list augmented by T).
/// Call sites must say which one they use.
struct NiceFamily {
    std::vector<IntPolynomial> polys;
    unsigned degree_sum = 0;
    unsigned d_main = 1;

    unsigned K() const { return static_cast<unsigned>(polys.size()); }

    IntPolynomial product() const {
        IntPolynomial prod{1};
        for (const auto& f : polys) prod = prod * f;
        return prod;
    }
};

struct NiceCheckResult {
    std::optional<NiceFamily> family;
    std::vector<std::string> violations;

    bool ok() const { return family.has_value(); }
};

/// Validates conditions (i) nonconstant members and (ii) squarefree product.
/// On failure every violated condition is listed.
inline NiceCheckResult check_nice(std::vector<IntPolynomial> polys) {
    if (polys.empty()) throw std::invalid_argument("check_nice: empty polynomial list");
    NiceCheckResult result;
    for (std::size_t k = 0; k < polys.size(); ++k) {
        if (polys[k].degree() < 1)
            result.violations.push_back("F_" + std::to_string(k + 1) + " = " + polys[k].to_string() +
                                        " is constant");
    }
    bool product_ok = true;
    if (result.violations.empty()) {
        IntPolynomial prod{1};
        for (const auto& f : polys) prod = prod * f;
        product_ok = is_squarefree_over_q(prod);
        if (!product_ok)
            result.violations.push_back("product " + prod.to_string() + " has a repeated root");
    }
    if (result.violations.empty()) {
        NiceFamily fam;
        fam.polys = std::move(polys);
        for (const auto& f : fam.polys) fam.degree_sum += static_cast<unsigned>(f.degree());
        fam.d_main = 1 + fam.degree_sum;
        result.family = std::move(fam);
    }
    return result;
}

/// Per-condition breakdown of the good-prime predicate:
/// (a) p > 5, (b) p > (1 + sum deg F_k)^2, (c) p divides no leading
/// coefficient, (d) p does not divide disc(F_1 ... F_K).
struct GoodPrimeReport {
    std::uint64_t p = 0;
    bool greater_than_5 = false;
    bool above_degree_square = false;
    bool leading_coeffs_ok = false;
    bool discriminant_ok = false;

    bool good() const {
        return greater_than_5 && above_degree_square && leading_coeffs_ok && discriminant_ok;
    }
};

inline GoodPrimeReport is_good_prime(const NiceFamily& fam, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("is_good_prime: " + std::to_string(p) + " is not prime");
    GoodPrimeReport report;
    report.p = p;
    report.greater_than_5 = p > 5;
    const std::uint64_t dm = fam.d_main;
    report.above_degree_square = p > dm * dm;
    report.leading_coeffs_ok = true;
    const BigInt bp = p;
    for (const auto& f : fam.polys) {
        if (f.leading() % bp == 0) report.leading_coeffs_ok = false;
    }
    report.discriminant_ok = discriminant(fam.product()) % bp != 0;
    return report;
}

inline std::vector<std::uint64_t> good_primes_in_range(const NiceFamily& fam, std::uint64_t lo,
                                                       std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (lo > hi) return out;
    if (hi - lo > 100'000'000ULL) throw std::invalid_argument("good_primes_in_range: range too wide");
    const BigInt disc = discriminant(fam.product());
    const std::uint64_t dm = fam.d_main;
    for_each_prime(lo, hi, [&](std::uint64_t p) {
        if (p <= 5 || p <= dm * dm) return;
        const BigInt bp = p;
        for (const auto& f : fam.polys)
            if (f.leading() % bp == 0) return;
        if (disc % bp == 0) return;
        out.push_back(p);
    });
    return out;
}

/// delta(q) = sum of 1/p over the distinct primes p | q, exact and as double.
struct DeltaValue {
    BigRat exact;
    double value = 0.0;
};

inline DeltaValue delta(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("delta: q must be >= 2");
    DeltaValue d;
    for (const auto& [p, e] : factorize_u64(q)) {
        (void)e;
        d.exact += BigRat(1, p);
    }
    d.value = d.exact.convert_to<double>();
    return d;
}

}  // namespace equilab

#endif
