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

#ifndef EQUILAB_LAB_HPP
#define EQUILAB_LAB_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "equilab/charsum.hpp"
#include "equilab/families.hpp"
#include "equilab/multfun.hpp"

namespace equilab {

namespace detail {

inline std::uint64_t euler_phi_u64(std::uint64_t q) {
    std::uint64_t phi = 1;
    for (const auto& [p, e] : factorize_u64(q)) phi *= checked_pow_u64(p, e - 1) * (p - 1);
    return phi;
}

inline std::vector<std::uint8_t> unit_table(std::uint64_t q) {
    std::vector<std::uint8_t> unit(q, 0);
    for (std::uint64_t c = 0; c < q; ++c) unit[c] = std::gcd(c, q) == 1 ? 1 : 0;
    return unit;
}

// Encodes a class tuple (a_1, ..., a_K) with a_k in [0, q) as an index
// into the dense (Z/q)^K table.
inline std::uint64_t encode_tuple(const std::vector<std::uint64_t>& a, std::uint64_t q) {
    std::uint64_t idx = 0;
    for (std::size_t k = a.size(); k-- > 0;) idx = idx * q + a[k];
    return idx;
}

inline std::vector<std::uint64_t> decode_tuple(std::uint64_t idx, std::uint64_t q, unsigned K) {
    std::vector<std::uint64_t> a(K);
    for (unsigned k = 0; k < K; ++k) {
        a[k] = idx % q;
        idx /= q;
    }
    return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// V counting: tuples (v_1..v_J) of units mod q with prod_j F_k(v_j) = u_k.
// ---------------------------------------------------------------------------

/// Exact counts of V for every target vector at once, computed by J-fold
/// multiplicative convolution of the fiber multiset {(F_1(v),...,F_K(v))}.
/// Entry encode(u) of the result is #V(u).
inline std::vector<std::uint64_t> vm_bruteforce_table(std::uint64_t q, const NiceFamily& fam, unsigned J) {
    if (q < 2) throw std::invalid_argument("vm_bruteforce_table: q must be >= 2");
    if (J < 1) throw std::invalid_argument("vm_bruteforce_table: J must be >= 1");
    const unsigned K = fam.K();
    double size = 1.0;
    for (unsigned k = 0; k < K; ++k) size *= static_cast<double>(q);
    if (size > 1e7)
        throw std::invalid_argument(
            "vm_bruteforce_table: q^K above the 1e7 fiber-convolution gate; use vm_via_characters");
    if (static_cast<double>(J) * static_cast<double>(K) * std::log2(static_cast<double>(q)) > 62.0)
        throw std::invalid_argument("vm_bruteforce_table: counts would overflow 64 bits");

    const std::uint64_t entries = static_cast<std::uint64_t>(size + 0.5);
    const std::vector<std::uint8_t> unit = detail::unit_table(q);

    // Fiber multiset over admissible v: all F_k(v) must be units.
    std::vector<std::uint64_t> fiber(entries, 0);
    std::vector<std::uint64_t> w(K);
    for (std::uint64_t v = 0; v < q; ++v) {
        if (!unit[v]) continue;
        bool ok = true;
        for (unsigned k = 0; k < K; ++k) {
            w[k] = eval_mod(fam.polys[k], v, q);
            if (!unit[w[k]]) {
                ok = false;
                break;
            }
        }
        if (ok) ++fiber[detail::encode_tuple(w, q)];
    }

    std::vector<std::uint64_t> cur = fiber;
    std::vector<std::uint64_t> next(entries);
    for (unsigned step = 1; step < J; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint64_t s = 0; s < entries; ++s) {
            if (cur[s] == 0) continue;
            const std::vector<std::uint64_t> sv = detail::decode_tuple(s, q, K);
            for (std::uint64_t t = 0; t < entries; ++t) {
                if (fiber[t] == 0) continue;
                std::vector<std::uint64_t> tv = detail::decode_tuple(t, q, K);
                for (unsigned k = 0; k < K; ++k) tv[k] = mulmod(tv[k], sv[k], q);
                next[detail::encode_tuple(tv, q)] += cur[s] * fiber[t];
            }
        }
        cur.swap(next);
    }
    return cur;
}

inline std::uint64_t vm_bruteforce(std::uint64_t q, const NiceFamily& fam,
                                   const std::vector<std::uint64_t>& u, unsigned J) {
    if (u.size() != fam.K()) throw std::invalid_argument("vm_bruteforce: target arity mismatch");
    for (std::uint64_t uk : u)
        if (std::gcd(uk % q, q) != 1) throw std::invalid_argument("vm_bruteforce: target classes must be units");
    std::vector<std::uint64_t> reduced(u);
    for (auto& uk : reduced) uk %= q;
    return vm_bruteforce_table(q, fam, J)[detail::encode_tuple(reduced, q)];
}

/// Precomputes S_{chi_1..chi_K} for every character tuple mod q once, then
/// answers the orthogonality-formula count for any target vector and any J.
/// Tuple enumeration order is fixed; thread count cannot change any output.
class VmCharacterEngine {
public:
    struct Estimate {
        double value = 0.0;
        double budget = 0.0;
    };

    VmCharacterEngine(std::uint64_t q, NiceFamily fam, unsigned threads = 1) : q_(q), fam_(std::move(fam)) {
        if (q < 3 || q % 2 == 0) throw std::invalid_argument("VmCharacterEngine: q must be odd and >= 3");
        const unsigned K = fam_.K();
        factorization_ = factorize_u64(q);
        for (const auto& [p, e] : factorization_) moduli_.push_back(PrimePowerModulus::make(p, e));
        phi_q_ = 1;
        phase_den_ = 1;
        for (const auto& mod : moduli_) {
            phi_q_ *= mod.group_order();
            phase_den_ = std::lcm(phase_den_, mod.group_order());
        }
        double tuples = 1.0;
        for (unsigned k = 0; k < K; ++k) tuples *= static_cast<double>(phi_q_);
        if (tuples > 1e7) throw std::invalid_argument("VmCharacterEngine: phi(q)^K above the 1e7 tuple gate");
        tuple_count_ = static_cast<std::uint64_t>(tuples + 0.5);

        grid_ = character_exponent_grid(moduli_);
        trivial_char_index_ = 0;
        for (std::size_t c = 0; c < grid_.size(); ++c) {
            bool trivial = true;
            for (std::size_t i = 0; i < moduli_.size(); ++i)
                if (grid_[c][i] != moduli_[i].group_order()) trivial = false;
            if (trivial) trivial_char_index_ = c;
        }

        build_value_tables();
        compute_all_sums(std::max(1u, threads));
    }

    std::uint64_t q() const { return q_; }
    std::uint64_t phi_q() const { return phi_q_; }
    std::uint64_t tuple_count() const { return tuple_count_; }
    const NiceFamily& family() const { return fam_; }

    /// Exact number of x mod q with x and every F_k(x) a unit (the S value of
    /// the all-trivial tuple).
    std::uint64_t trivial_sum() const { return s0_exact_; }

    double abs_sum(std::uint64_t t) const { return sums_[t].abs; }

    /// The orthogonality formula: (1/phi^K) sum over tuples of
    /// conj(prod chi_k(u_k)) S^J, with a tracked rounding budget.
    Estimate count(const std::vector<std::uint64_t>& u, unsigned J) const {
        const unsigned K = fam_.K();
        if (u.size() != K) throw std::invalid_argument("VmCharacterEngine::count: target arity mismatch");
        std::vector<std::vector<std::uint64_t>> u_phase(K, std::vector<std::uint64_t>(grid_.size()));
        for (unsigned k = 0; k < K; ++k) {
            std::uint64_t uk = u[k] % q_;
            if (std::gcd(uk, q_) != 1)
                throw std::invalid_argument("VmCharacterEngine::count: target classes must be units");
            for (std::size_t c = 0; c < grid_.size(); ++c) {
                std::uint64_t num = 0;
                for (std::size_t i = 0; i < moduli_.size(); ++i) {
                    const std::uint64_t phi = moduli_[i].group_order();
                    std::uint64_t a = grid_[c][i] % phi;
                    std::uint64_t idx = moduli_[i].ind(uk % moduli_[i].modulus());
                    num = (num + mulmod(a, idx, phi) * (phase_den_ / phi)) % phase_den_;
                }
                u_phase[k][c] = num;
            }
        }

        std::complex<double> acc{0.0, 0.0};
        double budget = 0.0;
        std::vector<std::size_t> digits(K);
        for (std::uint64_t t = 0; t < tuple_count_; ++t) {
            std::uint64_t rest = t;
            std::uint64_t phase = 0;
            for (unsigned k = 0; k < K; ++k) {
                digits[k] = rest % grid_.size();
                rest /= grid_.size();
                phase = (phase + u_phase[k][digits[k]]) % phase_den_;
            }
            // conj(prod chi_k(u_k)) = e(-phase/den)
            double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(phase_den_);
            std::complex<double> term(std::cos(angle), std::sin(angle));
            std::complex<double> spow{1.0, 0.0};
            for (unsigned j = 0; j < J; ++j) spow *= sums_[t].value;
            acc += term * spow;
            const double abs_s = sums_[t].abs;
            double pow_prev = 1.0;  // |S|^(J-1)
            for (unsigned j = 0; j + 1 < J; ++j) pow_prev *= abs_s;
            budget += static_cast<double>(J) * pow_prev * sums_[t].budget +
                      std::ldexp(pow_prev * abs_s, -48);
        }
        const double scale = std::pow(static_cast<double>(phi_q_), static_cast<double>(K));
        return Estimate{acc.real() / scale, (budget + std::abs(acc.imag())) / scale};
    }

    double main_term(unsigned J) const {
        return std::pow(static_cast<double>(s0_exact_), static_cast<double>(J)) /
               std::pow(static_cast<double>(phi_q_), static_cast<double>(fam_.K()));
    }

    double nontrivial_abs_pow_sum(unsigned J) const {
        double total = 0.0;
        for (std::uint64_t t = 0; t < tuple_count_; ++t) {
            if (t == trivial_tuple_index()) continue;
            double pw = 1.0;
            for (unsigned j = 0; j < J; ++j) pw *= sums_[t].abs;
            total += pw;
        }
        return total;
    }

    std::uint64_t trivial_tuple_index() const {
        std::uint64_t t = 0, stride = 1;
        for (unsigned k = 0; k < fam_.K(); ++k) {
            t += trivial_char_index_ * stride;
            stride *= grid_.size();
        }
        return t;
    }

    /// Degree sum of the augmented polynomial list backing the per-tuple
    /// theorem bound, and whether the bound's nondivisibility conditions hold
    /// at every prime of q.
    std::uint64_t augmented_degree_sum() const {
        std::uint64_t d = 0;
        for (const auto& f : detail::augmented_polys(fam_.polys)) d += static_cast<std::uint64_t>(f.degree());
        return d;
    }

    bool bound_applicable() const {
        const std::vector<IntPolynomial> aug = detail::augmented_polys(fam_.polys);
        IntPolynomial prod{1};
        for (const auto& f : aug) prod = prod * f;
        const BigInt disc = discriminant(prod);
        if (disc == 0) return false;
        for (const auto& [p, e] : factorization_) {
            (void)e;
            const BigInt bp = p;
            for (const auto& f : aug)
                if (f.leading() % bp == 0) return false;
            if (disc % bp == 0) return false;
        }
        return true;
    }

    /// Largest theorem bound over all nontrivial tuple types:
    /// max over nonempty prime subsets of q (D-1)^|T| prod p^(-1/D).
    double max_tuple_bound() const {
        const double d = static_cast<double>(augmented_degree_sum());
        double best = 0.0;
        const std::size_t np = factorization_.size();
        for (std::size_t mask = 1; mask < (1ULL << np); ++mask) {
            double b = static_cast<double>(q_);
            for (std::size_t i = 0; i < np; ++i) {
                if (mask & (1ULL << i))
                    b *= (d - 1.0) * std::pow(static_cast<double>(factorization_[i].first), -1.0 / d);
            }
            best = std::max(best, b);
        }
        return best;
    }

private:
    struct TupleSum {
        std::complex<double> value{0.0, 0.0};
        double abs = 0.0;
        double budget = 0.0;
    };

    void build_value_tables() {
        const unsigned K = fam_.K();
        value_ind_.resize(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            const std::uint64_t pe = moduli_[i].modulus();
            const std::uint64_t p = moduli_[i].p();
            const std::uint64_t phi = moduli_[i].group_order();
            std::vector<std::uint32_t> ind(pe, UINT32_MAX);
            std::uint64_t cur = 1;
            for (std::uint64_t j = 0; j < phi; ++j) {
                ind[cur] = static_cast<std::uint32_t>(j);
                cur = mulmod(cur, moduli_[i].g(), pe);
            }
            value_ind_[i].assign(K + 1, std::vector<std::uint32_t>(pe, UINT32_MAX));
            // slot K carries the chi_0 unit indicator through ind(x) itself
            for (std::uint64_t x = 0; x < pe; ++x) {
                if (x % p != 0) value_ind_[i][K][x] = ind[x];
                for (unsigned k = 0; k < K; ++k) {
                    std::uint64_t y = eval_mod(fam_.polys[k], x, pe);
                    if (y % p != 0) value_ind_[i][k][x] = ind[y];
                }
            }
        }
    }

    void compute_all_sums(unsigned threads) {
        sums_.assign(tuple_count_, TupleSum{});
        auto worker = [&](unsigned w) {
            for (std::uint64_t t = w; t < tuple_count_; t += threads) sums_[t] = one_sum(t);
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
            for (auto& th : pool) th.join();
        }
        s0_exact_ = 0;
        const std::uint64_t t0 = trivial_tuple_index();
        // recompute the trivial tuple's S exactly: it is an integer count
        PhaseHistogram h(1);
        std::uint64_t count = 0;
        std::vector<std::uint64_t> counter(moduli_.size(), 0);
        const unsigned K = fam_.K();
        for (std::uint64_t x = 0; x < q_; ++x) {
            bool dead = false;
            for (std::size_t i = 0; i < moduli_.size() && !dead; ++i) {
                for (unsigned k = 0; k <= K; ++k) {
                    if (value_ind_[i][k][counter[i]] == UINT32_MAX) {
                        dead = true;
                        break;
                    }
                }
            }
            if (!dead) ++count;
            for (std::size_t i = 0; i < moduli_.size(); ++i)
                if (++counter[i] == moduli_[i].modulus()) counter[i] = 0;
        }
        s0_exact_ = count;
        (void)t0;
    }

    TupleSum one_sum(std::uint64_t t) const {
        const unsigned K = fam_.K();
        std::vector<std::size_t> digits(K);
        std::uint64_t rest = t;
        for (unsigned k = 0; k < K; ++k) {
            digits[k] = rest % grid_.size();
            rest /= grid_.size();
        }
        PhaseHistogram hist(phase_den_);
        std::vector<std::uint64_t> counter(moduli_.size(), 0);
        for (std::uint64_t x = 0; x < q_; ++x) {
            std::uint64_t phase = 0;
            bool dead = false;
            for (std::size_t i = 0; i < moduli_.size(); ++i) {
                const std::uint64_t phi = moduli_[i].group_order();
                const std::uint64_t scale = phase_den_ / phi;
                if (value_ind_[i][K][counter[i]] == UINT32_MAX) {
                    dead = true;
                    break;
                }
                std::uint64_t local = 0;
                for (unsigned k = 0; k < K; ++k) {
                    const std::uint32_t iv = value_ind_[i][k][counter[i]];
                    if (iv == UINT32_MAX) {
                        dead = true;
                        break;
                    }
                    const std::uint64_t a = grid_[digits[k]][i] % phi;
                    local = (local + mulmod(a, iv, phi)) % phi;
                }
                if (dead) break;
                phase = (phase + local * scale) % phase_den_;
            }
            if (!dead) hist.add(phase);
            for (std::size_t i = 0; i < moduli_.size(); ++i)
                if (++counter[i] == moduli_[i].modulus()) counter[i] = 0;
        }
        CharSum s = CharSum::finalize(std::move(hist));
        return TupleSum{s.value, s.abs_value, s.rounding_budget};
    }

    std::uint64_t q_;
    NiceFamily fam_;
    std::vector<std::pair<std::uint64_t, unsigned>> factorization_;
    std::vector<PrimePowerModulus> moduli_;
    std::vector<std::vector<std::uint64_t>> grid_;  // character exponents per prime
    std::size_t trivial_char_index_ = 0;
    std::uint64_t phi_q_ = 1, phase_den_ = 1, tuple_count_ = 0, s0_exact_ = 0;
    // value_ind_[prime][k][x] = ind of F_k(x) (k < K) or of x itself (k = K);
    // UINT32_MAX marks non-units.
    std::vector<std::vector<std::vector<std::uint32_t>>> value_ind_;
    std::vector<TupleSum> sums_;
};

inline VmCharacterEngine::Estimate vm_via_characters(std::uint64_t q, const NiceFamily& fam,
                                                     const std::vector<std::uint64_t>& u, unsigned J,
                                                     unsigned threads = 1) {
    return VmCharacterEngine(q, fam, threads).count(u, J);
}

/// The claim-scale audit report: the count against its main term, the ratio
/// to q^J/phi^K, and the theorem-guaranteed aggregate error bounds.
struct ClaimAuditReport {
    std::uint64_t q = 0;
    unsigned K = 0, J = 0;
    double count = 0.0;
    double budget = 0.0;
    std::uint64_t trivial_sum = 0;        // S of the all-trivial tuple, exact
    double main_term = 0.0;               // S0^J / phi^K
    double ratio_to_q_scale = 0.0;        // count * phi^K / q^J
    bool bound_applicable = false;
    double per_tuple_bound = 0.0;         // B: max theorem bound over nontrivial tuples
    double aggregate_bound = 0.0;         // phi^K * B^J, bounds |phi^K #V - S0^J|
    double guaranteed_count_error = 0.0;  // aggregate / phi^K
    double nontrivial_pow_sum = 0.0;      // actual sum over nontrivial tuples of |S|^J
    bool exp_tail_applicable = false;
    double exp_tail_coeff = 0.0;          // exp(2 (D-1)^J delta(q)) - 1, on the q^J scale
};

inline ClaimAuditReport vm_claim_audit(std::uint64_t q, const NiceFamily& fam,
                                       const std::vector<std::uint64_t>& u, unsigned J,
                                       unsigned threads = 1) {
    VmCharacterEngine engine(q, fam, threads);
    ClaimAuditReport report;
    report.q = q;
    report.K = fam.K();
    report.J = J;
    auto est = engine.count(u, J);
    report.count = est.value;
    report.budget = est.budget;
    report.trivial_sum = engine.trivial_sum();
    report.main_term = engine.main_term(J);
    const double phiK = std::pow(static_cast<double>(engine.phi_q()), static_cast<double>(fam.K()));
    report.ratio_to_q_scale = report.count * phiK / std::pow(static_cast<double>(q), static_cast<double>(J));
    report.bound_applicable = engine.bound_applicable();
    if (report.bound_applicable) {
        report.per_tuple_bound = engine.max_tuple_bound();
        double bj = 1.0;
        for (unsigned j = 0; j < J; ++j) bj *= report.per_tuple_bound;
        report.aggregate_bound = phiK * bj;
        report.guaranteed_count_error = bj;
        const std::uint64_t d_aug = engine.augmented_degree_sum();
        if (J >= (fam.K() + 1) * d_aug) {
            report.exp_tail_applicable = true;
            double dm1 = static_cast<double>(d_aug) - 1.0;
            double pw = 1.0;
            for (unsigned j = 0; j < J; ++j) pw *= dm1;
            report.exp_tail_coeff = std::expm1(2.0 * pw * delta(q).value);
        }
    }
    report.nontrivial_pow_sum = engine.nontrivial_abs_pow_sum(J);
    return report;
}

// ---------------------------------------------------------------------------
// Equidistribution experiments.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::uint64_t x = 0;
    std::uint64_t q = 0;
    std::vector<MultiplicativeFunction> functions;
    std::vector<std::vector<std::uint64_t>> targets;  // optional class tuples to highlight
    std::uint64_t segment_width = default_segment_width;
    unsigned threads = 1;
};

struct ExperimentStats {
    std::uint64_t max_class_count = 0;
    std::uint64_t min_class_count = 0;
    double mean_class_count = 0.0;
    double max_rel_dev = 0.0;
    double tv_distance = 0.0;
    double chi_square = 0.0;
};

struct ExperimentReport {
    std::uint64_t x = 0;
    std::uint64_t q = 0;
    std::vector<std::string> function_names;
    std::map<std::vector<std::uint64_t>, std::uint64_t> counts;  // nonzero classes only
    std::uint64_t rhs_count = 0;
    std::uint64_t class_total = 0;  // number of unit class tuples, phi(q)^K
    ExperimentStats stats;
    double delta_q = 0.0;
    double logx_pow_inv_k = 0.0;
    bool q_within_theorem_range = false;
    std::vector<std::string> notes;
};

/// Sieves n <= x segment by segment, computes every f_k(n) mod q
/// incrementally from the streamed factorizations, and bins n by its class
/// tuple whenever all K values are units. Partition-deterministic: counts
/// merge by integer addition.
inline ExperimentReport joint_distribution(const ExperimentConfig& config) {
    const std::uint64_t x = config.x, q = config.q;
    const unsigned K = static_cast<unsigned>(config.functions.size());
    if (K == 0) throw std::invalid_argument("joint_distribution: need at least one function");
    if (q % 2 == 0) throw std::invalid_argument("joint_distribution: q must be odd");
    if (q < 3) throw std::invalid_argument("joint_distribution: q must be >= 3");
    if (x < q) throw std::invalid_argument("joint_distribution: need x >= q");
    if (x > 1'000'000'000ULL) throw std::invalid_argument("joint_distribution: x above the 1e9 gate");
    double entries_d = 1.0;
    for (unsigned k = 0; k < K; ++k) entries_d *= static_cast<double>(q);
    if (entries_d > 1e8) throw std::invalid_argument("joint_distribution: q^K class table above the 1e8 gate");
    const std::uint64_t entries = static_cast<std::uint64_t>(entries_d + 0.5);
    const std::uint64_t width = config.segment_width;
    if (width * (K * 8 + 2) > memory_budget_bytes())
        throw std::invalid_argument("joint_distribution: segment width exceeds the memory budget");
    for (const auto& a : config.targets) {
        if (a.size() != K) throw std::invalid_argument("joint_distribution: target arity mismatch");
        for (std::uint64_t ak : a)
            if (std::gcd(ak % q, q) != 1)
                throw std::invalid_argument("joint_distribution: target classes must be units");
    }

    const std::vector<std::uint8_t> unit = detail::unit_table(q);
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= x) ++root;
    const std::vector<std::uint32_t> base = primes_up_to(root);

    const unsigned threads = std::max(1u, config.threads);
    std::vector<std::vector<std::uint64_t>> worker_counts(threads,
                                                          std::vector<std::uint64_t>(entries, 0));

    multfun_scan(x, width, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi,
                                        std::vector<std::uint64_t>& residual) {
        const std::uint64_t seg_width = hi - lo;
        std::vector<std::uint64_t> val(static_cast<std::size_t>(seg_width) * K, 1 % q);
        std::vector<std::uint8_t> dead(seg_width, 0);
        detail::factor_segment(lo, hi, base, residual, [&](std::uint64_t i, std::uint64_t p, unsigned e) {
            if (dead[i]) return;
            for (unsigned k = 0; k < K; ++k) {
                std::uint64_t r = config.functions[k].prime_power_value_mod(p, e, q);
                if (!unit[r]) {
                    dead[i] = 1;
                    return;
                }
                std::uint64_t& slot = val[i * K + k];
                slot = mulmod(slot, r, q);
            }
        });
        auto& counts = worker_counts[w];
        for (std::uint64_t i = 0; i < seg_width; ++i) {
            if (dead[i]) continue;
            std::uint64_t idx = 0;
            for (unsigned k = K; k-- > 0;) idx = idx * q + val[i * K + k];
            ++counts[idx];
        }
    });

    std::vector<std::uint64_t> counts(entries, 0);
    for (const auto& wc : worker_counts)
        for (std::uint64_t i = 0; i < entries; ++i) counts[i] += wc[i];

    ExperimentReport report;
    report.x = x;
    report.q = q;
    for (const auto& f : config.functions) report.function_names.push_back(rule_name(f.rule));

    const std::uint64_t phi = detail::euler_phi_u64(q);
    std::uint64_t unit_classes = 1;
    for (unsigned k = 0; k < K; ++k) unit_classes *= phi;
    report.class_total = unit_classes;

    std::uint64_t rhs = 0, maxc = 0, minc = UINT64_MAX;
    for (std::uint64_t idx = 0; idx < entries; ++idx) {
        const std::vector<std::uint64_t> tuple = detail::decode_tuple(idx, q, K);
        bool unit_tuple = true;
        for (std::uint64_t a : tuple)
            if (!unit[a]) unit_tuple = false;
        if (!unit_tuple) continue;
        const std::uint64_t c = counts[idx];
        rhs += c;
        maxc = std::max(maxc, c);
        minc = std::min(minc, c);
        if (c > 0) report.counts.emplace(tuple, c);
    }
    report.rhs_count = rhs;
    report.stats.max_class_count = maxc;
    report.stats.min_class_count = minc == UINT64_MAX ? 0 : minc;
    const double mean = static_cast<double>(rhs) / static_cast<double>(unit_classes);
    report.stats.mean_class_count = mean;
    double max_dev = 0.0, tv = 0.0, chi2 = 0.0;
    if (rhs > 0) {
        for (std::uint64_t idx = 0; idx < entries; ++idx) {
            const std::vector<std::uint64_t> tuple = detail::decode_tuple(idx, q, K);
            bool unit_tuple = true;
            for (std::uint64_t a : tuple)
                if (!unit[a]) unit_tuple = false;
            if (!unit_tuple) continue;
            const double c = static_cast<double>(counts[idx]);
            max_dev = std::max(max_dev, std::abs(c - mean) / mean);
            tv += std::abs(c / static_cast<double>(rhs) - 1.0 / static_cast<double>(unit_classes));
            chi2 += (c - mean) * (c - mean) / mean;
        }
        tv *= 0.5;
    }
    report.stats.max_rel_dev = max_dev;
    report.stats.tv_distance = tv;
    report.stats.chi_square = chi2;

    report.delta_q = delta(q).value;
    report.logx_pow_inv_k =
        std::pow(std::log(static_cast<double>(x)), 1.0 / static_cast<double>(K));
    report.q_within_theorem_range = static_cast<double>(q) <= report.logx_pow_inv_k;
    if (!report.q_within_theorem_range)
        report.notes.push_back("q exceeds (log x)^(1/K): outside the proven uniformity range, "
                               "statistics are reported as evidence only");
    for (const auto& a : config.targets) {
        std::string key;
        for (std::size_t k = 0; k < a.size(); ++k) key += (k ? "," : "") + std::to_string(a[k] % q);
        auto it = report.counts.find([&] {
            std::vector<std::uint64_t> red(a);
            for (auto& v : red) v %= q;
            return red;
        }());
        const std::uint64_t c = it == report.counts.end() ? 0 : it->second;
        report.notes.push_back("target (" + key + "): count " + std::to_string(c) + ", rel dev " +
                               std::to_string(mean > 0 ? (static_cast<double>(c) - mean) / mean : 0.0));
    }
    return report;
}

/// Pulls a residue condition on f_k(m P_1 ... P_J) back to the large prime
/// factors: the target vector u with u_k = f_k(m)^(-1) a_k mod q. Requires
/// every f_k(m) and a_k to be a unit mod q.
inline std::vector<std::uint64_t> pullback_targets(std::uint64_t q,
                                                   const std::vector<MultiplicativeFunction>& functions,
                                                   std::uint64_t m, const std::vector<std::uint64_t>& a,
                                                   const SpfTable& table) {
    if (a.size() != functions.size()) throw std::invalid_argument("pullback_targets: arity mismatch");
    std::vector<std::uint64_t> u(a.size());
    for (std::size_t k = 0; k < functions.size(); ++k) {
        std::uint64_t fm = 1 % q;
        if (m > 1) {
            for (const auto& [p, e] : table.factorize(m))
                fm = mulmod(fm, functions[k].prime_power_value_mod(p, e, q), q);
        }
        if (std::gcd(fm, q) != 1)
            throw std::invalid_argument("pullback_targets: f_" + std::to_string(k + 1) +
                                        "(m) is not a unit mod q");
        if (std::gcd(a[k] % q, q) != 1)
            throw std::invalid_argument("pullback_targets: target class is not a unit mod q");
        u[k] = mulmod(invmod(fm, q), a[k] % q, q);
    }
    return u;
}

// ---------------------------------------------------------------------------
// Coprimality lower bound and the flagged-prime products.
// ---------------------------------------------------------------------------

namespace detail {

// Residue classes c mod q for which gcd(F_1(c) ... F_K(c), q) > 1. Flagged
// primes are exactly the p with bad[p mod q].
inline std::vector<std::uint8_t> bad_prime_class_table(const std::vector<IntPolynomial>& polys,
                                                       std::uint64_t q) {
    std::vector<std::uint8_t> bad(q, 0);
    for (std::uint64_t c = 0; c < q; ++c) {
        std::uint64_t prod = 1 % q;
        for (const auto& f : polys) prod = mulmod(prod, eval_mod(f, c, q), q);
        bad[c] = std::gcd(prod, q) == 1 ? 0 : 1;
    }
    return bad;
}

}  // namespace detail

struct CoprimeLowerResult {
    std::uint64_t x = 0, q = 0;
    std::uint64_t count = 0;             // n <= x with gcd(f(n), q) = 1
    std::uint64_t flagged_primes = 0;    // primes p <= x with gcd(f(p), q) > 1
    double sieve_product = 1.0;          // prod over flagged primes of (1 - 1/p)
    double bound = 0.0;                  // x/20 * product
    bool pass = false;
};

/// Counts n <= x with all f_k(n) coprime to q and compares against the
/// (1/20) x prod(1 - 1/p) lower bound over the flagged primes. The product
/// is accumulated single-threaded in prime order so the thread count cannot
/// change it.
inline CoprimeLowerResult coprime_lower_bound_check(std::uint64_t x, std::uint64_t q,
                                                    const std::vector<MultiplicativeFunction>& functions,
                                                    unsigned threads = 1,
                                                    std::uint64_t segment_width = default_segment_width) {
    if (x > 100'000'000ULL) throw std::invalid_argument("coprime_lower_bound_check: x above the 1e8 gate");
    if (q % 2 == 0) throw std::invalid_argument("coprime_lower_bound_check: q must be odd");
    if (functions.empty()) throw std::invalid_argument("coprime_lower_bound_check: need functions");

    CoprimeLowerResult result;
    result.x = x;
    result.q = q;

    std::vector<IntPolynomial> polys;
    for (const auto& f : functions) polys.push_back(f.prime_poly);
    const std::vector<std::uint8_t> bad = detail::bad_prime_class_table(polys, q);

    long double product = 1.0L;
    for_each_prime(2, x, [&](std::uint64_t p) {
        if (bad[p % q]) {
            product *= (1.0L - 1.0L / static_cast<long double>(p));
            ++result.flagged_primes;
        }
    });
    result.sieve_product = static_cast<double>(product);

    const std::vector<std::uint8_t> unit = detail::unit_table(q);
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= x) ++root;
    const std::vector<std::uint32_t> base = primes_up_to(root);
    threads = std::max(1u, threads);
    std::vector<std::uint64_t> per_worker(threads, 0);
    const unsigned K = static_cast<unsigned>(functions.size());

    multfun_scan(x, segment_width, threads, [&](unsigned w, std::uint64_t lo, std::uint64_t hi,
                                                std::vector<std::uint64_t>& residual) {
        const std::uint64_t seg_width = hi - lo;
        std::vector<std::uint8_t> dead(seg_width, 0);
        detail::factor_segment(lo, hi, base, residual, [&](std::uint64_t i, std::uint64_t p, unsigned e) {
            if (dead[i]) return;
            for (unsigned k = 0; k < K; ++k) {
                if (!unit[functions[k].prime_power_value_mod(p, e, q)]) {
                    dead[i] = 1;
                    return;
                }
            }
        });
        std::uint64_t local = 0;
        for (std::uint64_t i = 0; i < seg_width; ++i)
            if (!dead[i]) ++local;
        per_worker[w] += local;
    });
    for (std::uint64_t c : per_worker) result.count += c;
    result.bound = static_cast<double>(x) / 20.0 * result.sieve_product;
    result.pass = static_cast<double>(result.count) >= result.bound;
    return result;
}

struct RemarkProductResult {
    double reciprocal_sum = 0.0;  // sum of 1/p over flagged primes p <= x
    std::uint64_t flagged_primes = 0;
};

/// Partial sum of 1/p over primes p <= x with gcd(f(p), q) > 1, in extended
/// precision with compensated summation.
inline RemarkProductResult remark_b_product(std::uint64_t x, std::uint64_t q, const NiceFamily& fam) {
    if (x > 100'000'000ULL) throw std::invalid_argument("remark_b_product: x above the 1e8 gate");
    const std::vector<std::uint8_t> bad = detail::bad_prime_class_table(fam.polys, q);
    RemarkProductResult result;
    long double sum = 0.0L, comp = 0.0L;
    for_each_prime(2, x, [&](std::uint64_t p) {
        if (!bad[p % q]) return;
        ++result.flagged_primes;
        long double term = 1.0L / static_cast<long double>(p) - comp;
        long double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    });
    result.reciprocal_sum = static_cast<double>(sum);
    return result;
}

// ---------------------------------------------------------------------------
// Sifted intervals and the range-limit construction.
// ---------------------------------------------------------------------------

struct SiftResult {
    std::uint64_t count = 0;
    double main_term = 0.0;
    double relative_error = 0.0;
    double lemma_error_scale = 0.0;  // exp(-(1/2) log X / log Z)
};

/// Counts integers in (u, v] avoiding one forbidden class a_p mod p for each
/// listed prime, against the X prod(1 - 1/p) main term.
inline SiftResult sifted_interval_count(std::uint64_t u, std::uint64_t v,
                                        const std::vector<std::pair<std::uint64_t, std::uint64_t>>& forbidden) {
    if (v <= u) throw std::invalid_argument("sifted_interval_count: need v > u");
    const std::uint64_t X = v - u;
    if (X > 200'000'000ULL) throw std::invalid_argument("sifted_interval_count: interval above the 2e8 gate");
    std::uint64_t Z = 3;
    for (const auto& [p, a] : forbidden) {
        (void)a;
        if (!is_prime_u64(p)) throw std::invalid_argument("sifted_interval_count: moduli must be prime");
        Z = std::max(Z, p);
    }
    if (X < Z) throw std::invalid_argument("sifted_interval_count: need X >= Z");

    std::vector<bool> excluded(X, false);
    for (const auto& [p, a] : forbidden) {
        // first n > u with n = a (mod p)
        std::uint64_t r = (u + 1) % p;
        std::uint64_t ar = a % p;
        std::uint64_t start = u + 1 + (ar >= r ? ar - r : p - r + ar);
        for (std::uint64_t n = start; n <= v; n += p) excluded[n - u - 1] = true;
    }
    SiftResult result;
    for (std::uint64_t i = 0; i < X; ++i)
        if (!excluded[i]) ++result.count;
    double main = static_cast<double>(X);
    for (const auto& [p, a] : forbidden) {
        (void)a;
        main *= 1.0 - 1.0 / static_cast<double>(p);
    }
    result.main_term = main;
    result.relative_error = static_cast<double>(result.count) / main - 1.0;
    result.lemma_error_scale = std::exp(-0.5 * std::log(static_cast<double>(X)) /
                                        std::log(static_cast<double>(Z)));
    return result;
}

struct RangeLimitResult {
    double X = 0.0;
    std::vector<std::uint64_t> candidate_primes;  // primes in (2X/3, X]
    std::uint64_t p = 0;                          // the chosen (smallest) one
    std::uint64_t count = 0;                      // primes n <= x with n = p0 (mod p)
    double threshold = 0.0;                       // (4/3) x / p^K
    bool pass = false;
};

/// The failure-of-uniformity construction: with X = 2 (log x)^(1/(K-1)) and a
/// prime p in (2X/3, X], primes n = p0 (mod p) alone already overfill the
/// class tuple (F_1(p0), ..., F_K(p0)) mod p. Requires K >= 2.
inline RangeLimitResult range_limit_demo(std::uint64_t x, const NiceFamily& fam, std::uint64_t p0) {
    const unsigned K = fam.K();
    if (K < 2) throw std::invalid_argument("range_limit_demo: construction requires K >= 2");
    if (!is_prime_u64(p0)) throw std::invalid_argument("range_limit_demo: p0 must be prime");
    if (x > 1'000'000'000ULL) throw std::invalid_argument("range_limit_demo: x above the 1e9 gate");

    RangeLimitResult result;
    result.X = 2.0 * std::pow(std::log(static_cast<double>(x)), 1.0 / static_cast<double>(K - 1));
    const std::uint64_t hi = static_cast<std::uint64_t>(std::floor(result.X));
    const std::uint64_t lo = static_cast<std::uint64_t>(std::floor(2.0 * result.X / 3.0)) + 1;
    for (std::uint64_t c = lo; c <= hi; ++c)
        if (is_prime_u64(c)) result.candidate_primes.push_back(c);
    if (result.candidate_primes.empty())
        throw std::invalid_argument("range_limit_demo: no prime in (" + std::to_string(2.0 * result.X / 3.0) +
                                    ", " + std::to_string(result.X) + "]");
    const std::uint64_t p = result.candidate_primes.front();
    result.p = p;

    for (unsigned k = 0; k < K; ++k) {
        const BigInt value = fam.polys[k].eval(BigInt(p0));
        if (value == 0)
            throw std::invalid_argument("range_limit_demo: F_" + std::to_string(k + 1) + "(p0) = 0");
        if (value % BigInt(p) == 0)
            throw std::invalid_argument("range_limit_demo: gcd(F_" + std::to_string(k + 1) +
                                        "(p0), p) > 1 for p = " + std::to_string(p));
    }

    const std::uint64_t target = p0 % p;
    std::uint64_t count = 0;
    for_each_prime(2, x, [&](std::uint64_t n) {
        if (n % p == target) ++count;
    });
    result.count = count;
    double pk = 1.0;
    for (unsigned k = 0; k < K; ++k) pk *= static_cast<double>(p);
    result.threshold = (4.0 / 3.0) * static_cast<double>(x) / pk;
    result.pass = static_cast<double>(count) >= result.threshold;
    return result;
}

}  // namespace equilab

#endif
