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

#ifndef EQUILAB_MULTFUN_HPP
#define EQUILAB_MULTFUN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "equilab/modmath.hpp"
#include "equilab/poly.hpp"

namespace equilab {

inline std::uint64_t memory_budget_bytes() {
    if (const char* env = std::getenv("EQUILAB_MEM_MB")) {
        char* end = nullptr;
        unsigned long long mb = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && mb > 0) return static_cast<std::uint64_t>(mb) << 20;
    }
    return 2048ULL << 20;
}

inline constexpr std::uint64_t default_segment_width = 1ULL << 22;

/// Smallest-prime-factor table for a half-open range [lo, hi), built by a
/// segmented sieve. Base primes up to sqrt(hi) are kept so that any n < hi
/// (inside the range or not) can still be fully factored.
class SpfTable {
public:
    SpfTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint32_t> spf,
             std::vector<std::uint32_t> base_primes)
        : lo_(lo), hi_(hi), spf_(std::move(spf)), base_primes_(std::move(base_primes)) {}

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    const std::vector<std::uint32_t>& base_primes() const { return base_primes_; }

    std::uint32_t spf(std::uint64_t n) const {
        if (n < lo_ || n >= hi_) throw std::out_of_range("SpfTable::spf: n outside table range");
        return spf_[n - lo_];
    }

    bool contains(std::uint64_t n) const { return n >= lo_ && n < hi_; }

    /// Full factorization of any n in [1, hi): table lookups when possible,
    /// base-prime trial division for quotients that fall below the range.
    std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) const {
        if (n < 1 || n >= hi_) throw std::out_of_range("SpfTable::factorize: n outside [1, hi)");
        std::vector<std::pair<std::uint64_t, unsigned>> factors;
        std::uint64_t cur = n;
        while (cur > 1) {
            std::uint64_t p;
            if (contains(cur)) {
                p = spf_[cur - lo_];
            } else {
                p = cur;
                for (std::uint32_t b : base_primes_) {
                    std::uint64_t b64 = b;
                    if (b64 * b64 > cur) break;
                    if (cur % b64 == 0) {
                        p = b64;
                        break;
                    }
                }
            }
            unsigned e = 0;
            while (cur % p == 0) {
                cur /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
        std::sort(factors.begin(), factors.end());
        return factors;
    }

private:
    std::uint64_t lo_, hi_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> base_primes_;
};

inline SpfTable build_spf(std::uint64_t lo, std::uint64_t hi) {
    if (!(2 <= lo && lo < hi && hi <= 1'000'000'000ULL))
        throw std::invalid_argument("build_spf: need 2 <= lo < hi <= 1e9");
    const std::uint64_t entries = hi - lo;
    const std::uint64_t budget = memory_budget_bytes();
    if (entries * sizeof(std::uint32_t) > budget) {
        throw std::invalid_argument("build_spf: segment of " + std::to_string(entries) +
                                    " entries exceeds the memory budget; use a segment width of at most " +
                                    std::to_string(budget / sizeof(std::uint32_t)));
    }
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= hi - 1) ++root;
    std::vector<std::uint32_t> base = primes_up_to(root);
    std::vector<std::uint32_t> spf(entries, 0);
    for (std::uint32_t p : base) {
        const std::uint64_t p64 = p;
        std::uint64_t start = std::max(p64, (lo + p64 - 1) / p64) * p64;
        if (lo <= p64) start = p64;  // p itself is its own smallest factor
        for (std::uint64_t m = start; m < hi; m += p64) {
            if (spf[m - lo] == 0) spf[m - lo] = p;
        }
    }
    for (std::uint64_t i = 0; i < entries; ++i) {
        if (spf[i] == 0) spf[i] = static_cast<std::uint32_t>(lo + i);  // prime > sqrt(hi)
    }
    return SpfTable(lo, hi, std::move(spf), std::move(base));
}

enum class PrimePowerRule { CompletelyMult, EulerPhi, Sigma, Identity };

inline const char* rule_name(PrimePowerRule r) {
    switch (r) {
        case PrimePowerRule::CompletelyMult: return "completely_mult";
        case PrimePowerRule::EulerPhi: return "euler_phi";
        case PrimePowerRule::Sigma: return "sigma";
        case PrimePowerRule::Identity: return "identity";
    }
    return "?";
}

/// A multiplicative function determined by a polynomial prime rule
/// f(p) = F(p) together with an explicit rule on higher prime powers.
/// The named presets pin F to the polynomial their classical rule forces.
struct MultiplicativeFunction {
    IntPolynomial prime_poly;
    PrimePowerRule rule = PrimePowerRule::CompletelyMult;

    static MultiplicativeFunction identity() { return {IntPolynomial::variable(), PrimePowerRule::Identity}; }
    static MultiplicativeFunction euler_phi() { return {IntPolynomial{-1, 1}, PrimePowerRule::EulerPhi}; }
    static MultiplicativeFunction sigma() { return {IntPolynomial{1, 1}, PrimePowerRule::Sigma}; }
    static MultiplicativeFunction completely_mult(IntPolynomial f) {
        return {std::move(f), PrimePowerRule::CompletelyMult};
    }

    BigInt prime_power_value(std::uint64_t p, unsigned e) const {
        const BigInt bp = p;
        switch (rule) {
            case PrimePowerRule::Identity: {
                BigInt v = 1;
                for (unsigned i = 0; i < e; ++i) v *= bp;
                return v;
            }
            case PrimePowerRule::EulerPhi: {
                BigInt v = bp - 1;
                for (unsigned i = 1; i < e; ++i) v *= bp;
                return v;
            }
            case PrimePowerRule::Sigma: {
                BigInt v = 0, pw = 1;
                for (unsigned i = 0; i <= e; ++i) {
                    v += pw;
                    pw *= bp;
                }
                return v;
            }
            case PrimePowerRule::CompletelyMult: {
                BigInt fp = prime_poly.eval(bp);
                BigInt v = 1;
                for (unsigned i = 0; i < e; ++i) v *= fp;
                return v;
            }
        }
        throw std::logic_error("unreachable");
    }

    // f(p^e) mod q without materializing the integer value.
    std::uint64_t prime_power_value_mod(std::uint64_t p, unsigned e, std::uint64_t q) const {
        switch (rule) {
            case PrimePowerRule::Identity:
                return powmod(p % q, e, q);
            case PrimePowerRule::EulerPhi:
                return mulmod(powmod(p % q, e - 1, q), (p - 1) % q, q);
            case PrimePowerRule::Sigma: {
                std::uint64_t v = 0, pw = 1 % q, pq = p % q;
                for (unsigned i = 0; i <= e; ++i) {
                    v = (v + pw) % q;
                    pw = mulmod(pw, pq, q);
                }
                return v;
            }
            case PrimePowerRule::CompletelyMult:
                return powmod(eval_mod(prime_poly, p, q), e, q);
        }
        throw std::logic_error("unreachable");
    }
};

/// Evaluates f(n) exactly from the factorization of n.
inline BigInt evaluate(const MultiplicativeFunction& f, std::uint64_t n, const SpfTable& table) {
    if (n == 1) return 1;
    if (n < 1 || n >= table.hi())
        throw std::out_of_range("evaluate: n outside the table's factorization range");
    BigInt v = 1;
    for (const auto& [p, e] : table.factorize(n)) v *= f.prime_power_value(p, e);
    return v;
}

/// j-th largest prime factor, multiplicity counted; 1 when n has fewer
/// than j prime factors (and for n = 1).
inline std::uint64_t jth_largest_prime_factor(std::uint64_t n, unsigned j, const SpfTable& table) {
    if (n < 1 || j < 1) throw std::invalid_argument("jth_largest_prime_factor: need n >= 1, j >= 1");
    if (n == 1) return 1;
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : table.factorize(n))
        for (unsigned i = 0; i < e; ++i) primes.push_back(p);
    std::sort(primes.rbegin(), primes.rend());
    return j <= primes.size() ? primes[j - 1] : 1;
}

namespace detail {

// Streams the full factorization of every n in [lo, hi): fn(i, p, e) is
// called once per prime power p^e || (lo + i), primes in increasing order.
template <class Fn>
inline void factor_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& base_primes,
                           std::vector<std::uint64_t>& residual, Fn&& fn) {
    const std::uint64_t width = hi - lo;
    residual.resize(width);
    for (std::uint64_t i = 0; i < width; ++i) residual[i] = lo + i;
    for (std::uint32_t p : base_primes) {
        const std::uint64_t p64 = p;
        if (p64 * p64 >= hi) break;
        std::uint64_t start = std::max(p64, (lo + p64 - 1) / p64) * p64;
        if (lo <= p64) start = p64;
        for (std::uint64_t m = start; m < hi; m += p64) {
            std::uint64_t& r = residual[m - lo];
            unsigned e = 0;
            while (r % p64 == 0) {
                r /= p64;
                ++e;
            }
            fn(m - lo, p64, e);
        }
    }
    for (std::uint64_t i = 0; i < width; ++i) {
        if (residual[i] > 1) fn(i, residual[i], 1u);
    }
}

// Round-robin deterministic segment partition: worker w handles segments
// w, w+threads, ... Results must be merged with order-insensitive (integer)
// addition so the partition cannot influence any reported number.
template <class SegmentFn>
inline void run_segments(std::uint64_t lo, std::uint64_t hi, std::uint64_t segment_width, unsigned threads,
                         SegmentFn&& seg_fn) {
    if (segment_width == 0) throw std::invalid_argument("segment width must be positive");
    const std::uint64_t nsegs = (hi - lo + segment_width - 1) / segment_width;
    threads = std::max(1u, threads);
    if (threads == 1) {
        for (std::uint64_t s = 0; s < nsegs; ++s) {
            std::uint64_t seg_lo = lo + s * segment_width;
            seg_fn(0u, seg_lo, std::min(hi, seg_lo + segment_width));
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (std::uint64_t s = w; s < nsegs; s += threads) {
                std::uint64_t seg_lo = lo + s * segment_width;
                seg_fn(w, seg_lo, std::min(hi, seg_lo + segment_width));
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Drives a segmented scan over [1, x]: seg_fn(worker, lo, hi, residual)
/// runs once per segment with a reusable per-thread residual buffer.
/// Segments are assigned round-robin, so any merge done with plain integer
/// addition is independent of the thread count.
template <class SegFn>
inline void multfun_scan(std::uint64_t x, std::uint64_t segment_width, unsigned threads, SegFn&& seg_fn) {
    detail::run_segments(1, x + 1, segment_width, threads,
                         [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
                             thread_local std::vector<std::uint64_t> residual;
                             seg_fn(w, lo, hi, residual);
                         });
}

struct SemismoothResult {
    std::uint64_t count = 0;
    double reference = 0.0;  // x * (log y / log x) * (log log x)^(J-1)
    double ratio = 0.0;
};

/// Exact count of n <= x whose J-th largest prime factor is at most y,
/// reported against the x (log y/log x)(log log x)^(J-1) reference scale.
inline SemismoothResult semismooth_count(std::uint64_t x, std::uint64_t y, unsigned J, unsigned threads = 1,
                                         std::uint64_t segment_width = (1ULL << 20)) {
    if (!(x >= y && y >= 10)) throw std::invalid_argument("semismooth_count: need x >= y >= 10");
    if (J < 2) throw std::invalid_argument("semismooth_count: need J >= 2");
    if (x > 100'000'000ULL) throw std::invalid_argument("semismooth_count: x above the 1e8 gate");

    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= x) ++root;
    const std::vector<std::uint32_t> base = primes_up_to(root);
    threads = std::max(1u, threads);
    std::vector<std::uint64_t> per_worker(threads, 0);

    detail::run_segments(1, x + 1, segment_width, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t width = hi - lo;
        thread_local std::vector<std::uint64_t> residual;
        std::vector<std::uint32_t> ring(width * J);
        std::vector<std::uint8_t> nfac(width, 0);
        detail::factor_segment(lo, hi, base, residual, [&](std::uint64_t i, std::uint64_t p, unsigned e) {
            for (unsigned t = 0; t < e; ++t) ring[i * J + (nfac[i]++ % J)] = static_cast<std::uint32_t>(p);
        });
        std::uint64_t local = 0;
        for (std::uint64_t i = 0; i < width; ++i) {
            if (nfac[i] < J) {
                ++local;  // P_J = 1
            } else {
                std::uint64_t pj = ring[i * J + ((nfac[i] - J) % J)];
                if (pj <= y) ++local;
            }
        }
        per_worker[w] += local;
    });

    SemismoothResult r;
    for (std::uint64_t c : per_worker) r.count += c;
    const double lx = std::log(static_cast<double>(x));
    const double ly = std::log(static_cast<double>(y));
    r.reference = static_cast<double>(x) * (ly / lx) * std::pow(std::log(lx), static_cast<double>(J - 1));
    r.ratio = static_cast<double>(r.count) / r.reference;
    return r;
}

}  // namespace equilab

#endif
