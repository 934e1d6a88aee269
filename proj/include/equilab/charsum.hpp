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

#ifndef EQUILAB_CHARSUM_HPP
#define EQUILAB_CHARSUM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "equilab/chargroup.hpp"
#include "equilab/families.hpp"
#include "equilab/modmath.hpp"
#include "equilab/poly.hpp"

namespace equilab {

namespace detail {

// Cyclotomic polynomial Phi_n, ascending integer coefficients. Computed by
// dividing x^n - 1 by the Phi_d for proper divisors d; memoized.
inline const std::vector<BigInt>& cyclotomic(std::uint64_t n) {
    static std::map<std::uint64_t, std::vector<BigInt>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<const std::vector<BigInt>&(std::uint64_t)> compute =
        [&](std::uint64_t k) -> const std::vector<BigInt>& {
        auto hit = cache.find(k);
        if (hit != cache.end()) return hit->second;
        std::vector<BigInt> f(k + 1, BigInt(0));
        f[0] = -1;
        f[k] = 1;  // x^k - 1
        for (std::uint64_t d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            const std::vector<BigInt>& phi_d = compute(d);
            // exact division by the monic phi_d
            std::vector<BigInt> quot(f.size() - phi_d.size() + 1, BigInt(0));
            std::vector<BigInt> rem = f;
            for (std::size_t i = quot.size(); i-- > 0;) {
                BigInt c = rem[i + phi_d.size() - 1];
                quot[i] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= c * phi_d[j];
            }
            f = std::move(quot);
        }
        return cache.emplace(k, std::move(f)).first->second;
    };
    return compute(n);
}

}  // namespace detail

/// Exact accumulator for sums of den-th roots of unity: counts[k] copies of
/// exp(2 pi i k/den). Merging histograms is integer addition, so partitioned
/// sums are reproducible bit for bit regardless of the partition. Conversion
/// to a complex double happens once, with a tracked rounding budget.
struct PhaseHistogram {
    std::uint64_t den = 1;
    std::vector<std::int64_t> counts;
    std::uint64_t total = 0;

    explicit PhaseHistogram(std::uint64_t d = 1) : den(d), counts(d, 0) {}

    void add(std::uint64_t num, std::int64_t weight = 1) {
        counts[num % den] += weight;
        total += static_cast<std::uint64_t>(weight < 0 ? -weight : weight);
    }

    void merge(const PhaseHistogram& other) {
        if (other.den != den) throw std::invalid_argument("PhaseHistogram::merge: denominator mismatch");
        for (std::uint64_t k = 0; k < den; ++k) counts[k] += other.counts[k];
        total += other.total;
    }

    std::complex<double> to_complex() const {
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t k = 0; k < den; ++k) {
            if (counts[k] == 0) continue;
            double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(den);
            acc += static_cast<double>(counts[k]) * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        return acc;
    }

    double rounding_budget() const { return std::ldexp(static_cast<double>(total), -50); }

    /// Exact algebraic test: the sum is zero iff the histogram polynomial is
    /// divisible by the den-th cyclotomic polynomial.
    bool exact_zero(std::uint64_t den_gate = 100'000) const {
        if (total == 0) return true;
        if (den > den_gate) throw std::runtime_error("exact_zero: denominator above the cyclotomic gate");
        const std::vector<BigInt>& phi = detail::cyclotomic(den);
        std::vector<BigInt> rem(counts.begin(), counts.end());
        while (rem.size() >= phi.size()) {
            BigInt c = rem.back();
            if (c != 0) {
                std::size_t off = rem.size() - phi.size();
                for (std::size_t j = 0; j < phi.size(); ++j) rem[off + j] -= c * phi[j];
            }
            rem.pop_back();
        }
        for (const BigInt& c : rem)
            if (c != 0) return false;
        return true;
    }
};

/// A finished complete character sum: the exact histogram plus its complex
/// double rendering and rounding budget.
struct CharSum {
    PhaseHistogram hist;
    std::complex<double> value{0.0, 0.0};
    double abs_value = 0.0;
    double rounding_budget = 0.0;

    static CharSum finalize(PhaseHistogram h) {
        CharSum s{std::move(h)};
        s.value = s.hist.to_complex();
        s.abs_value = std::abs(s.value);
        s.rounding_budget = s.hist.rounding_budget();
        return s;
    }
};

enum class BoundKind { Weil, Cochrane, Prop1, Composite };

inline const char* bound_name(BoundKind k) {
    switch (k) {
        case BoundKind::Weil: return "WEIL";
        case BoundKind::Cochrane: return "COCHRANE";
        case BoundKind::Prop1: return "PROP1";
        case BoundKind::Composite: return "COMPOSITE";
    }
    return "?";
}

enum class CheckStatus { Satisfied, Violated, HypothesisNotEstablished, HypothesisVoid };

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Satisfied: return "satisfied";
        case CheckStatus::Violated: return "VIOLATED";
        case CheckStatus::HypothesisNotEstablished: return "hypothesis not established";
        case CheckStatus::HypothesisVoid: return "hypothesis void";
    }
    return "?";
}

struct CharSumResult {
    CharSum sum;
    double bound = 0.0;
    BoundKind bound_kind = BoundKind::Weil;
    CheckStatus status = CheckStatus::HypothesisNotEstablished;
    std::vector<std::string> conditions;  // per-condition breakdown / failure notes

    bool satisfied() const { return status == CheckStatus::Satisfied; }
};

namespace detail {

// A zero bound demands an exact zero; otherwise the pass verdict admits the
// rounding budget, which must stay below 1e-6 of the bound.
inline CheckStatus classify_against_bound(const CharSum& sum, double bound) {
    if (bound == 0.0) return sum.hist.exact_zero() ? CheckStatus::Satisfied : CheckStatus::Violated;
    if (sum.rounding_budget >= 1e-6 * bound)
        throw std::runtime_error("rounding budget too large for a trustworthy verdict; "
                                 "exact phase-histogram summation required");
    return sum.abs_value <= bound + sum.rounding_budget ? CheckStatus::Satisfied : CheckStatus::Violated;
}

}  // namespace detail

/// Brute-force complete sum over x mod q of [chi_0(x)] chi_1(F_1(x)) ...
/// chi_K(F_K(x)), with the zero-marker convention for arguments sharing a
/// factor with the local modulus. Exact phase arithmetic throughout; one
/// complex conversion at the end.
inline CharSum complete_sum(std::uint64_t q, const std::vector<IntPolynomial>& polys,
                            const CharacterTuple& tuple, bool with_unit_restriction) {
    if (q % 2 == 0) throw std::invalid_argument("complete_sum: q must be odd");
    if (q > 10'000'000ULL) throw std::invalid_argument("complete_sum: q above the 1e7 brute-force gate");
    if (tuple.q() != q) throw std::invalid_argument("complete_sum: tuple modulus mismatch");
    if (polys.size() != tuple.K())
        throw std::invalid_argument("complete_sum: polynomial/character count mismatch");

    const std::uint64_t L = tuple.phase_den();
    const auto& fact = tuple.factorization();
    const std::size_t np = fact.size();

    constexpr std::int64_t kDead = INT64_MIN;
    // Per prime power: the scaled phase contribution of every residue class.
    std::vector<std::vector<std::int64_t>> local_phase(np);
    std::vector<std::uint64_t> pe_all(np);
    for (std::size_t i = 0; i < np; ++i) {
        const auto& [p, e] = fact[i];
        const std::uint64_t pe = checked_pow_u64(p, e);
        pe_all[i] = pe;
        const PrimePowerModulus& mod = tuple.local(0, i).modulus();
        const std::uint64_t phi = mod.group_order();
        const std::uint64_t scale = L / phi;

        // index table for this prime power
        std::vector<std::uint32_t> ind(pe, UINT32_MAX);
        std::uint64_t cur = 1;
        for (std::uint64_t j = 0; j < phi; ++j) {
            ind[cur] = static_cast<std::uint32_t>(j);
            cur = mulmod(cur, mod.g(), pe);
        }

        std::vector<std::vector<std::uint64_t>> coeffs(polys.size());
        for (std::size_t k = 0; k < polys.size(); ++k) coeffs[k] = reduce_mod_p(polys[k], pe);

        auto& phase = local_phase[i];
        phase.assign(pe, 0);
        for (std::uint64_t x = 0; x < pe; ++x) {
            if (with_unit_restriction && x % p == 0) {
                phase[x] = kDead;
                continue;
            }
            std::uint64_t acc = 0;
            bool dead = false;
            for (std::size_t k = 0; k < polys.size(); ++k) {
                std::uint64_t y = 0;
                for (std::size_t c = coeffs[k].size(); c-- > 0;) y = (mulmod(y, x, pe) + coeffs[k][c]) % pe;
                if (y % p == 0) {
                    dead = true;
                    break;
                }
                acc = (acc + mulmod(tuple.local(static_cast<unsigned>(k), i).exponent() % phi, ind[y], phi)) % phi;
            }
            phase[x] = dead ? kDead : static_cast<std::int64_t>(acc * scale);
        }
    }

    PhaseHistogram hist(L);
    std::vector<std::uint64_t> counter(np, 0);
    for (std::uint64_t x = 0; x < q; ++x) {
        std::int64_t totals = 0;
        bool dead = false;
        for (std::size_t i = 0; i < np; ++i) {
            std::int64_t v = local_phase[i][counter[i]];
            if (v == kDead) {
                dead = true;
                break;
            }
            totals += v;
        }
        if (!dead) hist.add(static_cast<std::uint64_t>(totals) % L);
        for (std::size_t i = 0; i < np; ++i) {
            if (++counter[i] == pe_all[i]) counter[i] = 0;
        }
    }
    return CharSum::finalize(std::move(hist));
}

namespace detail {

inline CharacterTuple single_prime_tuple(std::vector<DirichletCharacter> chars) {
    if (chars.empty()) throw std::invalid_argument("single_prime_tuple: empty character list");
    const std::uint64_t q = chars[0].modulus().modulus();
    std::vector<std::vector<DirichletCharacter>> locals;
    locals.reserve(chars.size());
    for (auto& chi : chars) locals.push_back({std::move(chi)});
    return compose_tuple(q, std::move(locals));
}

}  // namespace detail

/// Verifies the (sum d_k - 1) sqrt(p) bound for a prime modulus. The lemma's
/// hypothesis is established operationally through the stronger conditions
/// of the m = 1 proposition case: leading coefficients and the discriminant
/// of the product prime to p, plus a nontrivial character on a nonconstant
/// polynomial. Anything weaker reports hypothesis-not-established rather
/// than a pass.
inline CharSumResult weil_check(std::uint64_t p, const std::vector<IntPolynomial>& polys,
                                std::vector<DirichletCharacter> chars) {
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("weil_check: p must be an odd prime");
    if (polys.empty() || polys.size() != chars.size())
        throw std::invalid_argument("weil_check: need matching nonempty polynomial/character lists");
    for (const auto& chi : chars) {
        if (chi.modulus().modulus() != p) throw std::invalid_argument("weil_check: characters must be mod p");
    }
    CharSumResult result;
    result.bound_kind = BoundKind::Weil;

    const BigInt bp = p;
    bool lc_ok = true;
    for (const auto& f : polys) {
        if (f.is_zero()) throw std::invalid_argument("weil_check: zero polynomial");
        if (f.leading() % bp == 0) lc_ok = false;
    }
    result.conditions.push_back(std::string("leading coefficients prime to p: ") + (lc_ok ? "yes" : "NO"));

    IntPolynomial prod{1};
    for (const auto& f : polys) prod = prod * f;
    bool disc_ok = prod.degree() >= 1 && discriminant(prod) % bp != 0;
    result.conditions.push_back(std::string("product squarefree mod p (p does not divide disc): ") +
                                (disc_ok ? "yes" : "NO"));

    bool witness = false;
    for (std::size_t k = 0; k < chars.size(); ++k) {
        if (!chars[k].is_trivial() && polys[k].degree() >= 1) witness = true;
    }
    result.conditions.push_back(std::string("some nontrivial character on a nonconstant polynomial: ") +
                                (witness ? "yes" : "NO"));

    result.sum = complete_sum(p, polys, detail::single_prime_tuple(std::move(chars)), false);
    if (!(lc_ok && disc_ok && witness)) {
        result.status = CheckStatus::HypothesisNotEstablished;
        return result;
    }
    // Established hypothesis makes every F_k squarefree mod p, so the largest
    // squarefree divisor is F_k itself.
    std::uint64_t degree_sum = 0;
    for (const auto& f : polys) degree_sum += static_cast<std::uint64_t>(f.degree());
    result.bound = (static_cast<double>(degree_sum) - 1.0) * std::sqrt(static_cast<double>(p));
    result.status = detail::classify_against_bound(result.sum, result.bound);
    return result;
}

/// The derivative-content data (t, F~, A, nu_alpha, M) controlling the
/// prime-power bound.
struct CochraneData {
    unsigned t = 0;
    IntPolynomial f_tilde;          // mod-p representative of p^-t F'
    std::vector<ModPRoot> a_set;    // roots of F~ that are not roots of F mod p
    unsigned max_multiplicity = 0;  // M, 0 when A is empty
    std::uint64_t nu_sum = 0;       // sum of multiplicities over A
};

inline CochraneData cochrane_params(const IntPolynomial& f, std::uint64_t p) {
    if (f.degree() < 1) throw std::invalid_argument("cochrane_params: polynomial must be nonconstant");
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("cochrane_params: p must be an odd prime");
    CochraneData data;
    IntPolynomial fprime = derivative(f);
    data.t = p_content_valuation(fprime, p);
    BigInt pt = 1;
    for (unsigned i = 0; i < data.t; ++i) pt *= p;
    std::vector<BigInt> scaled;
    scaled.reserve(fprime.coefficients().size());
    for (const BigInt& c : fprime.coefficients()) scaled.push_back(c / pt);
    std::vector<std::uint64_t> ft = reduce_mod_p(IntPolynomial(std::move(scaled)), p);
    std::vector<BigInt> ft_big(ft.begin(), ft.end());
    data.f_tilde = IntPolynomial(std::move(ft_big));
    for (const ModPRoot& root : roots_mod_p(data.f_tilde, p)) {
        if (eval_mod(f, root.residue, p) != 0) {
            data.a_set.push_back(root);
            data.max_multiplicity = std::max(data.max_multiplicity, root.multiplicity);
            data.nu_sum += root.multiplicity;
        }
    }
    return data;
}

/// |sum over x mod p^m of chi(F(x))| against (sum nu) p^(t/(M+1)) p^(m(1-1/(M+1)))
/// for the canonical generator character. Requires m >= t + 2. An empty A
/// gives a zero bound and the sum is then required to vanish exactly.
inline CharSumResult cochrane_check(const IntPolynomial& f, std::uint64_t p, unsigned m) {
    CochraneData data = cochrane_params(f, p);
    if (m < data.t + 2)
        throw std::invalid_argument("cochrane_check: lemma hypothesis violated, need m >= t + 2 (t = " +
                                    std::to_string(data.t) + ")");
    const std::uint64_t pm = checked_pow_u64(p, m);
    if (pm > 10'000'000ULL) throw std::invalid_argument("cochrane_check: p^m above the 1e7 gate");
    PrimePowerModulus mod = PrimePowerModulus::make(p, m);
    const std::uint64_t phi = mod.group_order();

    std::vector<std::uint32_t> ind(pm, UINT32_MAX);
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < phi; ++j) {
        ind[cur] = static_cast<std::uint32_t>(j);
        cur = mulmod(cur, mod.g(), pm);
    }
    const std::vector<std::uint64_t> coeffs = reduce_mod_p(f, pm);
    PhaseHistogram hist(phi);
    for (std::uint64_t x = 0; x < pm; ++x) {
        std::uint64_t y = 0;
        for (std::size_t c = coeffs.size(); c-- > 0;) y = (mulmod(y, x, pm) + coeffs[c]) % pm;
        if (y % p == 0) continue;
        hist.add(ind[y]);
    }

    CharSumResult result;
    result.bound_kind = BoundKind::Cochrane;
    result.sum = CharSum::finalize(std::move(hist));
    const double M1 = static_cast<double>(data.max_multiplicity) + 1.0;
    result.bound = static_cast<double>(data.nu_sum) *
                   std::pow(static_cast<double>(p), static_cast<double>(data.t) / M1) *
                   std::pow(static_cast<double>(pm), 1.0 - 1.0 / M1);
    result.conditions.push_back("t = " + std::to_string(data.t) + ", M = " +
                                std::to_string(data.max_multiplicity) + ", sum nu = " +
                                std::to_string(data.nu_sum));
    result.status = detail::classify_against_bound(result.sum, result.bound);
    return result;
}

inline CharSumResult cochrane_check(const IntPolynomial& f, const DirichletCharacter& chi) {
    if (chi.exponent() != 1)
        throw std::invalid_argument("cochrane_check: the check runs for the canonical generator character");
    return cochrane_check(f, chi.modulus().p(), chi.modulus().m());
}

/// |sum chi_1(F_1(x)) ... chi_K(F_K(x)) over x mod p^m| against the
/// (D - 1) p^(m(1-1/D)) bound, D = sum of the degrees of the polynomial list
/// handed to this check. Precondition failures are reported per condition.
inline CharSumResult prop1_check(std::uint64_t p, unsigned m, const std::vector<IntPolynomial>& polys,
                                 std::vector<DirichletCharacter> chars) {
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("prop1_check: p must be an odd prime");
    if (polys.empty() || polys.size() != chars.size())
        throw std::invalid_argument("prop1_check: need matching nonempty polynomial/character lists");
    const std::uint64_t pm = checked_pow_u64(p, m);
    for (const auto& chi : chars) {
        if (chi.modulus().p() != p || chi.modulus().m() != m)
            throw std::invalid_argument("prop1_check: characters must be mod p^m");
    }

    CharSumResult result;
    result.bound_kind = BoundKind::Prop1;
    bool ok = true;
    const BigInt bp = p;

    bool nonconstant = true;
    for (const auto& f : polys)
        if (f.degree() < 1) nonconstant = false;
    result.conditions.push_back(std::string("all polynomials nonconstant: ") + (nonconstant ? "yes" : "NO"));
    ok = ok && nonconstant;

    bool lc_ok = true;
    for (const auto& f : polys)
        if (!f.is_zero() && f.leading() % bp == 0) lc_ok = false;
    result.conditions.push_back(std::string("p divides no leading coefficient: ") + (lc_ok ? "yes" : "NO"));
    ok = ok && lc_ok;

    bool sqfree_ok = false, disc_ok = false;
    if (nonconstant) {
        IntPolynomial prod{1};
        for (const auto& f : polys) prod = prod * f;
        BigInt disc = discriminant(prod);
        sqfree_ok = disc != 0;
        disc_ok = disc % bp != 0;
    }
    result.conditions.push_back(std::string("product has no multiple roots: ") + (sqfree_ok ? "yes" : "NO"));
    result.conditions.push_back(std::string("p does not divide the discriminant: ") + (disc_ok ? "yes" : "NO"));
    ok = ok && sqfree_ok && disc_ok;

    bool primitive = false;
    for (const auto& chi : chars)
        if (chi.is_primitive()) primitive = true;
    result.conditions.push_back(std::string("at least one character primitive: ") + (primitive ? "yes" : "NO"));
    ok = ok && primitive;

    result.sum = complete_sum(pm, polys, detail::single_prime_tuple(std::move(chars)), false);
    if (!ok) {
        result.status = CheckStatus::HypothesisNotEstablished;
        return result;
    }
    std::uint64_t degree_sum = 0;
    for (const auto& f : polys) degree_sum += static_cast<std::uint64_t>(f.degree());
    const double d = static_cast<double>(degree_sum);
    result.bound = (d - 1.0) * std::pow(static_cast<double>(pm), 1.0 - 1.0 / d);
    result.status = detail::classify_against_bound(result.sum, result.bound);
    return result;
}

/// F = prod F_k^(A_k) and G = sum A_k F_k' prod_{j != k} F_j, with the exact
/// identity F' = (prod F_k^(A_k - 1)) G verified on construction.
struct ProofPolynomials {
    IntPolynomial f;
    IntPolynomial g;
};

inline ProofPolynomials proof_polynomials(const NiceFamily& fam, const std::vector<unsigned>& exponents) {
    if (exponents.size() != fam.K()) throw std::invalid_argument("proof_polynomials: exponent count mismatch");
    for (unsigned a : exponents)
        if (a < 1) throw std::invalid_argument("proof_polynomials: exponents must be >= 1");
    ProofPolynomials out;
    out.f = IntPolynomial{1};
    for (std::size_t k = 0; k < fam.polys.size(); ++k) out.f = out.f * fam.polys[k].pow(exponents[k]);
    out.g = IntPolynomial();
    for (std::size_t k = 0; k < fam.polys.size(); ++k) {
        IntPolynomial term = derivative(fam.polys[k]) * IntPolynomial::constant(exponents[k]);
        for (std::size_t j = 0; j < fam.polys.size(); ++j)
            if (j != k) term = term * fam.polys[j];
        out.g = out.g + term;
    }
    IntPolynomial cofactor{1};
    for (std::size_t k = 0; k < fam.polys.size(); ++k) cofactor = cofactor * fam.polys[k].pow(exponents[k] - 1);
    if (derivative(out.f) != cofactor * out.g)
        throw std::logic_error("proof_polynomials: derivative identity failed");
    return out;
}

struct TZeroResult {
    enum class Status { Holds, Fails, HypothesisVoid } status = Status::HypothesisVoid;
    unsigned valuation = 0;

    bool holds() const { return status == Status::Holds; }
};

/// Checks that G has p-content valuation zero whenever some exponent is not
/// divisible by p. Requires p good for the family.
inline TZeroResult t_zero_check(const NiceFamily& fam, std::uint64_t p, const std::vector<unsigned>& exponents) {
    if (!is_good_prime(fam, p).good())
        throw std::invalid_argument("t_zero_check: p = " + std::to_string(p) + " is not good for the family");
    bool any_unit_exponent = false;
    for (unsigned a : exponents)
        if (a % p != 0) any_unit_exponent = true;
    TZeroResult result;
    if (!any_unit_exponent) {
        result.status = TZeroResult::Status::HypothesisVoid;
        return result;
    }
    ProofPolynomials pp = proof_polynomials(fam, exponents);
    result.valuation = p_content_valuation(pp.g, p);
    result.status = result.valuation == 0 ? TZeroResult::Status::Holds : TZeroResult::Status::Fails;
    return result;
}

namespace detail {

// The polynomial list the aggregated bound is proved for: augmented with T
// when the unit restriction is not already implied by some F_k being a
// multiple of T.
inline std::vector<IntPolynomial> augmented_polys(const std::vector<IntPolynomial>& polys) {
    bool has_t_multiple = false;
    for (const auto& f : polys)
        if (!f.is_zero() && f.coeff(0) == 0) has_t_multiple = true;
    if (has_t_multiple) return polys;
    std::vector<IntPolynomial> aug;
    aug.reserve(polys.size() + 1);
    aug.push_back(IntPolynomial::variable());
    for (const auto& f : polys) aug.push_back(f);
    return aug;
}

}  // namespace detail

/// Brute-force |S| over x mod q (unit-restricted sum) against the aggregated
/// bound q (D-1)^omega(q1) prod_{p | q1} f_p^(-1/D), with D the degree sum of
/// the augmented polynomial list.
inline CharSumResult composite_bound_check(std::uint64_t q, const NiceFamily& fam,
                                           const CharacterTuple& tuple) {
    if (tuple.all_trivial())
        throw std::invalid_argument("composite_bound_check: bound vacuous for the all-trivial tuple");
    if (tuple.q() != q) throw std::invalid_argument("composite_bound_check: tuple modulus mismatch");
    if (tuple.K() != fam.K()) throw std::invalid_argument("composite_bound_check: arity mismatch");

    CharSumResult result;
    result.bound_kind = BoundKind::Composite;

    const std::vector<IntPolynomial> aug = detail::augmented_polys(fam.polys);
    std::uint64_t degree_sum = 0;
    for (const auto& f : aug) degree_sum += static_cast<std::uint64_t>(f.degree());

    IntPolynomial prod{1};
    for (const auto& f : aug) prod = prod * f;
    const BigInt disc = discriminant(prod);
    bool ok = true;
    for (const auto& [p, e] : tuple.factorization()) {
        (void)e;
        const BigInt bp = p;
        bool lc_ok = true;
        for (const auto& f : aug)
            if (f.leading() % bp == 0) lc_ok = false;
        bool disc_ok = disc != 0 && disc % bp != 0;
        if (!lc_ok || !disc_ok) ok = false;
        result.conditions.push_back("p = " + std::to_string(p) + ": leading coefficients " +
                                    (lc_ok ? "ok" : "DIVISIBLE") + ", discriminant " +
                                    (disc_ok ? "ok" : "DIVISIBLE"));
    }

    result.sum = complete_sum(q, fam.polys, tuple, true);
    if (!ok) {
        result.status = CheckStatus::HypothesisNotEstablished;
        return result;
    }

    const double d = static_cast<double>(degree_sum);
    double bound = static_cast<double>(q);
    unsigned omega_q1 = 0;
    for (const auto& [p, fp] : tuple.type()) {
        (void)p;
        if (fp > 1) {
            ++omega_q1;
            bound *= std::pow(static_cast<double>(fp), -1.0 / d);
        }
    }
    for (unsigned i = 0; i < omega_q1; ++i) bound *= (d - 1.0);
    result.bound = bound;
    result.conditions.push_back("D = " + std::to_string(degree_sum) + " (augmented list), q1 = " +
                                std::to_string(tuple.q1()));
    result.status = detail::classify_against_bound(result.sum, result.bound);
    return result;
}

}  // namespace equilab

#endif
