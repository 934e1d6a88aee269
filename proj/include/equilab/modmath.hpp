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

#ifndef EQUILAB_MODMATH_HPP
#define EQUILAB_MODMATH_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace equilab {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (r != 1) throw std::invalid_argument("invmod: argument not a unit modulo " + std::to_string(m));
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

// Deterministic Miller-Rabin; the base set covers all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Trial-division factorization, (prime, exponent) pairs in ascending prime order.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint32_t> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
        }
    }
    return primes;
}

// Visits every prime in [lo, hi] in increasing order, segment by segment.
template <class Fn>
inline void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn,
                           std::uint64_t segment_width = (1ULL << 22)) {
    if (hi < 2 || lo > hi) return;
    if (lo < 2) lo = 2;
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= hi) ++root;
    const std::vector<std::uint32_t> base = primes_up_to(root);
    std::vector<bool> sieve;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi; ) {
        std::uint64_t seg_hi = std::min(hi, seg_lo + segment_width - 1);
        sieve.assign(seg_hi - seg_lo + 1, true);
        for (std::uint32_t p : base) {
            std::uint64_t p64 = p;
            std::uint64_t start = std::max(p64 * p64, ((seg_lo + p64 - 1) / p64) * p64);
            for (std::uint64_t m = start; m <= seg_hi; m += p64) sieve[m - seg_lo] = false;
        }
        for (std::uint64_t n = seg_lo; n <= seg_hi; ++n) {
            if (sieve[n - seg_lo] && n >= 2) fn(n);
        }
        if (seg_hi == hi) break;
        seg_lo = seg_hi + 1;
    }
}

inline std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base) throw std::overflow_error("checked_pow_u64 overflow");
        result *= base;
    }
    return result;
}

}  // namespace equilab

#endif
