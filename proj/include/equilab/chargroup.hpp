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

#ifndef EQUILAB_CHARGROUP_HPP
#define EQUILAB_CHARGROUP_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "equilab/modmath.hpp"

namespace equilab {

/// Odd prime power p^m with the smallest primitive root g and the group
/// order phi(p^m). For moduli up to 2^16 a full index table is built once
/// at construction; larger moduli fall back to baby-step/giant-step.
/// Immutable after construction, safe to share across threads.
class PrimePowerModulus {
public:
    static constexpr std::uint64_t index_table_limit = 1ULL << 16;

    static PrimePowerModulus make(std::uint64_t p, unsigned m) {
        if (p == 2) throw std::invalid_argument("odd prime powers only");
        if (m < 1) throw std::invalid_argument("PrimePowerModulus: m must be >= 1");
        if (!is_prime_u64(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        PrimePowerModulus mod;
        mod.p_ = p;
        mod.m_ = m;
        mod.modulus_ = checked_pow_u64(p, m);
        if (mod.modulus_ > 1'000'000'000ULL)
            throw std::invalid_argument("PrimePowerModulus: p^m above the 1e9 gate");
        mod.group_order_ = mod.modulus_ / p * (p - 1);
        mod.g_ = find_primitive_root(p, mod.modulus_, mod.group_order_);
        if (mod.modulus_ <= index_table_limit) mod.build_index_table();
        return mod;
    }

    std::uint64_t p() const { return p_; }
    unsigned m() const { return m_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t g() const { return g_; }
    std::uint64_t group_order() const { return group_order_; }

    /// Discrete log: the unique i in [0, phi(p^m)) with g^i = x (mod p^m).
    std::uint64_t ind(std::uint64_t x) const {
        x %= modulus_;
        if (x % p_ == 0) throw std::invalid_argument("ind: not a unit modulo " + std::to_string(modulus_));
        if (!index_table_.empty()) return index_table_[x];
        return ind_bsgs(x);
    }

private:
    static std::uint64_t find_primitive_root(std::uint64_t p, std::uint64_t modulus, std::uint64_t order) {
        std::vector<std::uint64_t> order_primes;
        for (const auto& [r, e] : factorize_u64(order)) {
            (void)e;
            order_primes.push_back(r);
        }
        for (std::uint64_t g = 2; g < modulus; ++g) {
            if (g % p == 0) continue;
            bool primitive = true;
            for (std::uint64_t r : order_primes) {
                if (powmod(g, order / r, modulus) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return g;
        }
        throw std::logic_error("no primitive root found");  // cannot happen for odd prime powers
    }

    void build_index_table() {
        index_table_.assign(modulus_, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t i = 0; i < group_order_; ++i) {
            index_table_[cur] = i;
            cur = mulmod(cur, g_, modulus_);
        }
    }

    std::uint64_t ind_bsgs(std::uint64_t x) const {
        const std::uint64_t n = group_order_;
        std::uint64_t step = 1;
        while (step * step < n) ++step;
        std::unordered_map<std::uint64_t, std::uint64_t> baby;
        baby.reserve(step * 2);
        std::uint64_t cur = 1;
        for (std::uint64_t j = 0; j < step; ++j) {
            baby.emplace(cur, j);
            cur = mulmod(cur, g_, modulus_);
        }
        const std::uint64_t giant = invmod(powmod(g_, step, modulus_), modulus_);
        std::uint64_t gamma = x;
        for (std::uint64_t i = 0; i <= step; ++i) {
            auto it = baby.find(gamma);
            if (it != baby.end()) return (i * step + it->second) % n;
            gamma = mulmod(gamma, giant, modulus_);
        }
        throw std::logic_error("ind: discrete log not found");
    }

    std::uint64_t p_ = 0, modulus_ = 0, g_ = 0, group_order_ = 0;
    unsigned m_ = 0;
    std::vector<std::uint32_t> index_table_;
};

inline std::uint64_t primitive_root(std::uint64_t p, unsigned m) {
    return PrimePowerModulus::make(p, m).g();
}

/// A character value as an exact phase: exp(2 pi i num/den), or the zero
/// marker for arguments sharing a factor with the modulus.
struct CharValue {
    bool zero = true;
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    bool is_one() const { return !zero && num % den == 0; }

    std::complex<double> to_complex() const {
        if (zero) return {0.0, 0.0};
        double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(angle), std::sin(angle)};
    }
};

/// Dirichlet character modulo p^m, written as the A-th power of the
/// generator character x -> e(ind_g(x)/phi(p^m)). A = phi(p^m) is the
/// trivial character. The conductor is found at construction by direct
/// testing on the kernel subgroups 1 + p^s Z.
class DirichletCharacter {
public:
    static DirichletCharacter make(PrimePowerModulus mod, std::uint64_t exponent) {
        if (exponent < 1 || exponent > mod.group_order())
            throw std::invalid_argument("character exponent must lie in [1, group order]");
        DirichletCharacter chi;
        chi.mod_ = std::move(mod);
        chi.exponent_ = exponent;
        chi.conductor_ = compute_conductor(chi.mod_, exponent);
        return chi;
    }

    const PrimePowerModulus& modulus() const { return mod_; }
    std::uint64_t exponent() const { return exponent_; }
    std::uint64_t conductor() const { return conductor_; }
    bool is_trivial() const { return exponent_ == mod_.group_order(); }
    bool is_primitive() const { return conductor_ == mod_.modulus(); }

    std::uint64_t order() const { return mod_.group_order() / std::gcd(exponent_, mod_.group_order()); }

    CharValue operator()(std::uint64_t x) const {
        x %= mod_.modulus();
        if (x % mod_.p() == 0) return CharValue{};
        return CharValue{false, mulmod(exponent_ % mod_.group_order(), mod_.ind(x), mod_.group_order()),
                         mod_.group_order()};
    }

private:
    static std::uint64_t compute_conductor(const PrimePowerModulus& mod, std::uint64_t exponent) {
        const std::uint64_t phi = mod.group_order();
        if (exponent % phi == 0) return 1;  // trivial on all units
        std::uint64_t ps = 1;
        for (unsigned s = 1; s <= mod.m(); ++s) {
            ps *= mod.p();
            if (s == mod.m()) break;  // chi(1) = 1 always; p^m is the fallback
            bool trivial_on_kernel = true;
            for (std::uint64_t x = 1 + ps; x < mod.modulus(); x += ps) {
                if (mulmod(exponent, mod.ind(x), phi) % phi != 0) {
                    trivial_on_kernel = false;
                    break;
                }
            }
            if (trivial_on_kernel) return ps;
        }
        return mod.modulus();
    }

    PrimePowerModulus mod_;
    std::uint64_t exponent_ = 0;
    std::uint64_t conductor_ = 1;
};

inline CharValue character_value(const DirichletCharacter& chi, std::uint64_t x) { return chi(x); }

inline std::uint64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

/// The induced character modulo p^s of a character whose conductor divides
/// p^s: same values on units, exponent rescaled to the smaller group.
inline DirichletCharacter induce_to(const DirichletCharacter& chi, unsigned s) {
    if (s < 1 || s > chi.modulus().m()) throw std::invalid_argument("induce_to: bad target exponent");
    std::uint64_t ps = checked_pow_u64(chi.modulus().p(), s);
    if (chi.conductor() > ps) throw std::invalid_argument("induce_to: conductor does not divide target");
    PrimePowerModulus target = PrimePowerModulus::make(chi.modulus().p(), s);
    std::uint64_t shrink = chi.modulus().group_order() / target.group_order();
    std::uint64_t a = chi.exponent() / shrink;
    if (a * shrink != chi.exponent()) throw std::logic_error("induce_to: exponent not divisible");
    if (a == 0) a = target.group_order();
    return DirichletCharacter::make(std::move(target), a);
}

/// A K-tuple of Dirichlet characters modulo odd q, stored by their local
/// components at each prime power of q. Carries the tuple's type (the
/// per-prime lcm of local conductors) and the unitary split q = q0 q1.
class CharacterTuple {
public:
    std::uint64_t q() const { return q_; }
    unsigned K() const { return static_cast<unsigned>(locals_.size()); }
    const std::vector<std::pair<std::uint64_t, unsigned>>& factorization() const { return factorization_; }
    const std::vector<std::vector<DirichletCharacter>>& locals() const { return locals_; }
    const std::map<std::uint64_t, std::uint64_t>& type() const { return type_; }
    std::uint64_t q0() const { return q0_; }
    std::uint64_t q1() const { return q1_; }

    // Common phase denominator: lcm of the local group orders.
    std::uint64_t phase_den() const { return phase_den_; }

    bool all_trivial() const {
        for (const auto& row : locals_)
            for (const auto& chi : row)
                if (!chi.is_trivial()) return false;
        return true;
    }

    const DirichletCharacter& local(unsigned k, std::size_t prime_index) const {
        return locals_[k][prime_index];
    }

    /// chi_k(x) as an exact phase over the common denominator.
    CharValue value(unsigned k, std::uint64_t x) const {
        std::uint64_t num = 0;
        for (std::size_t i = 0; i < locals_[k].size(); ++i) {
            const DirichletCharacter& chi = locals_[k][i];
            CharValue v = chi(x % chi.modulus().modulus());
            if (v.zero) return CharValue{};
            num = (num + v.num * (phase_den_ / v.den)) % phase_den_;
        }
        return CharValue{false, num, phase_den_};
    }

    friend CharacterTuple compose_tuple(std::uint64_t q, std::vector<std::vector<DirichletCharacter>> locals);

private:
    std::uint64_t q_ = 1, q0_ = 1, q1_ = 1, phase_den_ = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factorization_;
    std::vector<std::vector<DirichletCharacter>> locals_;  // [k][prime index]
    std::map<std::uint64_t, std::uint64_t> type_;
};

inline CharacterTuple compose_tuple(std::uint64_t q, std::vector<std::vector<DirichletCharacter>> locals) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("compose_tuple: q must be odd and >= 3");
    if (locals.empty()) throw std::invalid_argument("compose_tuple: need at least one character");
    CharacterTuple tuple;
    tuple.q_ = q;
    tuple.factorization_ = factorize_u64(q);
    for (const auto& row : locals) {
        if (row.size() != tuple.factorization_.size())
            throw std::invalid_argument("compose_tuple: mismatched moduli");
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& [p, e] = tuple.factorization_[i];
            if (row[i].modulus().p() != p || row[i].modulus().m() != e)
                throw std::invalid_argument("compose_tuple: mismatched moduli");
        }
    }
    tuple.locals_ = std::move(locals);
    for (std::size_t i = 0; i < tuple.factorization_.size(); ++i) {
        const auto& [p, e] = tuple.factorization_[i];
        std::uint64_t fp = 1;
        for (const auto& row : tuple.locals_) fp = std::max(fp, row[i].conductor());
        tuple.type_[p] = fp;  // lcm of p-power conductors = max
        std::uint64_t pe = checked_pow_u64(p, e);
        if (fp > 1)
            tuple.q1_ *= pe;
        else
            tuple.q0_ *= pe;
        tuple.phase_den_ = std::lcm(tuple.phase_den_, tuple.locals_[0][i].modulus().group_order());
    }
    return tuple;
}

/// All characters modulo an odd q in a fixed enumeration order, as local
/// exponent vectors. Entry t of the result is the exponent of the t-th
/// character at each prime of the factorization.
inline std::vector<std::vector<std::uint64_t>> character_exponent_grid(
    const std::vector<PrimePowerModulus>& prime_moduli) {
    std::vector<std::vector<std::uint64_t>> grid;
    std::vector<std::uint64_t> digits(prime_moduli.size(), 1);
    for (;;) {
        grid.push_back(digits);
        std::size_t i = 0;
        while (i < digits.size()) {
            if (digits[i] < prime_moduli[i].group_order()) {
                ++digits[i];
                break;
            }
            digits[i] = 1;
            ++i;
        }
        if (i == digits.size()) break;
    }
    return grid;
}

}  // namespace equilab

#endif
