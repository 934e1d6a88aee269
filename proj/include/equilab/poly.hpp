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

#ifndef EQUILAB_POLY_HPP
#define EQUILAB_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "equilab/modmath.hpp"

namespace equilab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Univariate polynomial with exact integer coefficients, stored in
/// ascending degree order with no trailing zeros. The zero polynomial
/// is the empty coefficient sequence and has degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;

    IntPolynomial(std::initializer_list<long long> coeffs) {
        for (long long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(BigInt c) {
        IntPolynomial f;
        f.coeffs_.push_back(std::move(c));
        f.trim();
        return f;
    }

    // The monomial T.
    static IntPolynomial variable() { return IntPolynomial{0, 1}; }

    bool is_zero() const { return coeffs_.empty(); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<BigInt>& coefficients() const { return coeffs_; }

    const BigInt& coeff(std::size_t i) const {
        static const BigInt zero = 0;
        return i < coeffs_.size() ? coeffs_[i] : zero;
    }

    const BigInt& leading() const {
        if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPolynomial operator+(const IntPolynomial& rhs) const {
        std::vector<BigInt> out(std::max(coeffs_.size(), rhs.coeffs_.size()), BigInt(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) out[i] += rhs.coeffs_[i];
        return IntPolynomial(std::move(out));
    }

    IntPolynomial operator-(const IntPolynomial& rhs) const {
        std::vector<BigInt> out(std::max(coeffs_.size(), rhs.coeffs_.size()), BigInt(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) out[i] -= rhs.coeffs_[i];
        return IntPolynomial(std::move(out));
    }

    IntPolynomial operator-() const {
        std::vector<BigInt> out = coeffs_;
        for (auto& c : out) c = -c;
        return IntPolynomial(std::move(out));
    }

    IntPolynomial operator*(const IntPolynomial& rhs) const {
        if (is_zero() || rhs.is_zero()) return IntPolynomial();
        std::vector<BigInt> out(coeffs_.size() + rhs.coeffs_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        return IntPolynomial(std::move(out));
    }

    IntPolynomial operator*(const BigInt& s) const {
        std::vector<BigInt> out = coeffs_;
        for (auto& c : out) c *= s;
        return IntPolynomial(std::move(out));
    }

    IntPolynomial pow(unsigned e) const {
        IntPolynomial result = IntPolynomial{1};
        IntPolynomial base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    bool operator==(const IntPolynomial& rhs) const { return coeffs_ == rhs.coeffs_; }
    bool operator!=(const IntPolynomial& rhs) const { return coeffs_ != rhs.coeffs_; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            if (i == 0 || a != 1) os << a.str();
            if (i >= 1) os << "T";
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

/// Root of a polynomial in F_p together with its multiplicity.
struct ModPRoot {
    std::uint64_t residue = 0;
    unsigned multiplicity = 1;
    bool operator==(const ModPRoot&) const = default;
};

inline IntPolynomial derivative(const IntPolynomial& f) {
    if (f.degree() <= 0) return IntPolynomial();
    std::vector<BigInt> out(static_cast<std::size_t>(f.degree()));
    for (int i = 1; i <= f.degree(); ++i)
        out[static_cast<std::size_t>(i - 1)] = f.coeff(static_cast<std::size_t>(i)) * i;
    return IntPolynomial(std::move(out));
}

// F(x) mod m by Horner's scheme, reducing at every step.
inline std::uint64_t eval_mod(const IntPolynomial& f, const BigInt& x, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("eval_mod: modulus must be >= 1");
    if (m == 1) return 0;
    const BigInt mod = m;
    BigInt xr = x % mod;
    if (xr < 0) xr += mod;
    const std::uint64_t xm = xr.convert_to<std::uint64_t>();
    std::uint64_t acc = 0;
    const auto& coeffs = f.coefficients();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        BigInt cr = *it % mod;
        if (cr < 0) cr += mod;
        acc = (mulmod(acc, xm, m) + cr.convert_to<std::uint64_t>()) % m;
    }
    return acc;
}

inline std::uint64_t eval_mod(const IntPolynomial& f, std::uint64_t x, std::uint64_t m) {
    return eval_mod(f, BigInt(x), m);
}

// Pseudo-remainder: the R with lc(B)^(deg A - deg B + 1) * A = Q*B + R,
// deg R < deg B. Knuth's multiply-through scheme, no divisions.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_remainder: zero divisor");
    if (a.degree() < b.degree()) throw std::invalid_argument("pseudo_remainder: deg A < deg B");
    const BigInt& lb = b.leading();
    IntPolynomial r = a;
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int s = r.degree() - b.degree();
        std::vector<BigInt> mono(static_cast<std::size_t>(s) + 1, BigInt(0));
        mono.back() = r.leading();
        r = r * lb - IntPolynomial(std::move(mono)) * b;
        --e;
    }
    if (e > 0) {
        BigInt scale = 1;
        for (int i = 0; i < e; ++i) scale *= lb;
        r = r * scale;
    }
    return r;
}

inline BigInt content(const IntPolynomial& f) {
    BigInt g = 0;
    for (const BigInt& c : f.coefficients()) g = boost::multiprecision::gcd(g, c);
    return g;  // 0 for the zero polynomial
}

inline IntPolynomial primitive_part(const IntPolynomial& f) {
    if (f.is_zero()) return f;
    BigInt g = content(f);
    if (f.leading() < 0) g = -g;
    std::vector<BigInt> out = f.coefficients();
    for (auto& c : out) c /= g;
    return IntPolynomial(std::move(out));
}

// Gcd over Z via the primitive pseudo-remainder sequence. The result is
// primitive with positive leading coefficient, times gcd of the contents.
inline IntPolynomial gcd_over_z(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero() && b.is_zero()) return IntPolynomial();
    if (a.is_zero()) return primitive_part(b) * content(b);
    if (b.is_zero()) return primitive_part(a) * content(a);
    BigInt cont = boost::multiprecision::gcd(content(a), content(b));
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
        if (!b.is_zero() && a.degree() < b.degree()) std::swap(a, b);
    }
    return a * cont;
}

/// Resultant under the Sylvester-matrix convention: res(F, G) is the
/// determinant of the Sylvester matrix whose first deg G rows carry the
/// coefficients of F. Equivalently res(F, G) = lc(F)^deg(G) * prod G(alpha)
/// over the roots alpha of F, so res(T - a, T - b) = a - b. Computed by a
/// fraction-free pseudo-remainder recursion with one exact division at
/// the end.
inline BigInt resultant(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("undefined resultant of zero polynomial");
    int sign = 1;
    BigInt num = 1, den = 1;
    for (;;) {
        int da = a.degree(), db = b.degree();
        if (da < db) {
            std::swap(a, b);
            if ((da & 1) && (db & 1)) sign = -sign;
            continue;
        }
        if (db == 0) {
            BigInt base = 1;
            for (int i = 0; i < da; ++i) base *= b.leading();
            BigInt prod = num * base * sign;
            BigInt q = prod / den;
            if (q * den != prod) throw std::logic_error("resultant: inexact final division");
            return q;
        }
        IntPolynomial r = pseudo_remainder(a, b);
        if (r.is_zero()) return 0;  // common factor
        int dr = r.degree();
        // res(A,B) = (-1)^(da*db) lc(B)^((da-dr) - (da-db+1)*db) res(B,R)
        if ((da & 1) && (db & 1)) sign = -sign;
        long long e = static_cast<long long>(da - dr) - static_cast<long long>(da - db + 1) * db;
        BigInt scale = 1;
        for (long long i = 0; i < (e >= 0 ? e : -e); ++i) scale *= b.leading();
        if (e >= 0)
            num *= scale;
        else
            den *= scale;
        a = std::move(b);
        b = std::move(r);
    }
}

/// disc(F) = (-1)^(n(n-1)/2) * res(F, F') / lc(F) with n = deg F.
inline BigInt discriminant(const IntPolynomial& f) {
    int n = f.degree();
    if (n < 1) throw std::invalid_argument("discriminant undefined for constants");
    BigInt r = resultant(f, derivative(f));
    BigInt d = r / f.leading();
    if (d * f.leading() != r) throw std::logic_error("discriminant: resultant not divisible by leading coefficient");
    if (((static_cast<long long>(n) * (n - 1)) / 2) % 2 != 0) d = -d;
    return d;
}

// True iff gcd(F, F') is constant, i.e. F has no repeated roots over Q.
inline bool is_squarefree_over_q(const IntPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree test on zero polynomial");
    if (f.degree() <= 0) return true;
    return gcd_over_z(f, derivative(f)).degree() == 0;
}

// Reduction mod p as ascending coefficients in [0, p), trailing zeros trimmed.
inline std::vector<std::uint64_t> reduce_mod_p(const IntPolynomial& f, std::uint64_t p) {
    std::vector<std::uint64_t> out;
    out.reserve(f.coefficients().size());
    const BigInt mod = p;
    for (const BigInt& c : f.coefficients()) {
        BigInt r = c % mod;
        if (r < 0) r += mod;
        out.push_back(r.convert_to<std::uint64_t>());
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

namespace detail {

// Synthetic division of f (ascending coeffs over F_p) by (T - alpha).
// Returns true and replaces f by the quotient when the remainder is 0.
inline bool divide_out_root(std::vector<std::uint64_t>& f, std::uint64_t alpha, std::uint64_t p) {
    if (f.empty()) return false;
    std::vector<std::uint64_t> q(f.size() - 1);
    std::uint64_t carry = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
        std::uint64_t b = (f[i] + mulmod(carry, alpha, p)) % p;
        if (i == 0) {
            if (b != 0) return false;
        } else {
            q[i - 1] = b;
        }
        carry = b;
    }
    f = std::move(q);
    while (!f.empty() && f.back() == 0) f.pop_back();
    return true;
}

inline std::uint64_t eval_fp(const std::vector<std::uint64_t>& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (mulmod(acc, x, p) + f[i]) % p;
    return acc;
}

}  // namespace detail

/// All roots of F in F_p with multiplicities, found by direct scan over [0, p)
/// and repeated synthetic division.
inline std::vector<ModPRoot> roots_mod_p(const IntPolynomial& f, std::uint64_t p) {
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("roots_mod_p: p must be an odd prime");
    std::vector<std::uint64_t> fp = reduce_mod_p(f, p);
    if (fp.empty()) throw std::invalid_argument("roots_mod_p: zero polynomial mod p");
    std::vector<ModPRoot> roots;
    for (std::uint64_t alpha = 0; alpha < p; ++alpha) {
        if (detail::eval_fp(fp, alpha, p) != 0) continue;
        std::vector<std::uint64_t> g = fp;
        unsigned mult = 0;
        while (detail::divide_out_root(g, alpha, p)) ++mult;
        roots.push_back(ModPRoot{alpha, mult});
    }
    return roots;
}

/// Largest t with p^t dividing every coefficient (min p-adic valuation
/// over the nonzero coefficients).
inline unsigned p_content_valuation(const IntPolynomial& f, std::uint64_t p) {
    if (f.is_zero()) throw std::invalid_argument("p_content_valuation of zero polynomial");
    if (p < 2) throw std::invalid_argument("p_content_valuation: p must be >= 2");
    unsigned best = UINT32_MAX;
    const BigInt bp = p;
    for (const BigInt& c : f.coefficients()) {
        if (c == 0) continue;
        unsigned v = 0;
        BigInt a = c;
        while (a % bp == 0 && v < best) {
            a /= bp;
            ++v;
        }
        best = std::min(best, v);
        if (best == 0) break;
    }
    return best;
}

}  // namespace equilab

#endif
