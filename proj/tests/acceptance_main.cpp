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

// Acceptance suite: every check below runs end to end with its tolerance
// pinned in code and prints exactly one verdict line. The exit code is the
// number of hard failures; warnings do not fail the run.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "equilab/lab.hpp"
#include "equilab/report.hpp"

using namespace equilab;

namespace {

int failures = 0;
int warnings = 0;

void verdict(int criterion, bool pass, const std::string& detail, bool warn_only = false) {
    const char* tag = pass ? "PASS" : (warn_only ? "WARN" : "FAIL");
    if (!pass && warn_only) ++warnings;
    if (!pass && !warn_only) ++failures;
    std::cout << "criterion " << criterion << " " << tag << " - " << detail << "\n" << std::flush;
}

std::vector<std::vector<std::uint64_t>> unit_tuples(std::uint64_t q, unsigned K) {
    std::vector<std::uint64_t> units;
    for (std::uint64_t a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) units.push_back(a);
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::size_t> digits(K, 0);
    for (;;) {
        std::vector<std::uint64_t> tuple(K);
        for (unsigned k = 0; k < K; ++k) tuple[k] = units[digits[k]];
        out.push_back(std::move(tuple));
        unsigned k = 0;
        while (k < K && ++digits[k] == units.size()) digits[k++] = 0;
        if (k == K) break;
    }
    return out;
}

// Threshold for the x = 1e7 deviation in criterion 5, recorded from the
// mandatory oracle run at x = 1e6 (observed max relative deviation 27.1627
// over the 4096 unit classes for q = 17 with the n/phi/sigma family).
constexpr double kDeviationAtX1e6 = 27.163;

void criterion_1() {
    const NiceFamily fam1 = *check_nice({IntPolynomial{-1, 1}}).family;
    const NiceFamily fam2 = *check_nice({IntPolynomial{-1, 1}, IntPolynomial{1, 1}}).family;
    double max_err = 0.0;
    std::uint64_t compared = 0;
    for (std::uint64_t q : {5, 7, 9, 15, 25}) {
        for (const NiceFamily* fam : {&fam1, &fam2}) {
            VmCharacterEngine engine(q, *fam);
            auto targets = unit_tuples(q, fam->K());
            for (unsigned J : {1u, 2u, 3u}) {
                auto table = vm_bruteforce_table(q, *fam, J);
                for (const auto& u : targets) {
                    double exact = static_cast<double>(table[detail::encode_tuple(u, q)]);
                    double est = engine.count(u, J).value;
                    max_err = std::max(max_err, std::abs(est - exact));
                    ++compared;
                }
            }
        }
    }
    std::ostringstream os;
    os << "orthogonality identity, q in {5,7,9,15,25}, K in {1,2}, J in {1,2,3}: " << compared
       << " unit targets, max |characters - bruteforce| = " << std::scientific << std::setprecision(2)
       << max_err << " (tolerance 1e-6)";
    verdict(1, max_err < 1e-6, os.str());
}

void criterion_2() {
    const std::vector<IntPolynomial> polys = {IntPolynomial{-1, 1}, IntPolynomial{1, 1}};
    std::uint64_t checked = 0, violations = 0;
    for (std::uint64_t p : {7, 11, 13, 17, 19, 23}) {
        PrimePowerModulus mod = PrimePowerModulus::make(p, 1);
        std::vector<DirichletCharacter> chars;
        for (std::uint64_t a = 1; a <= p - 1; ++a) chars.push_back(DirichletCharacter::make(mod, a));
        for (std::uint64_t a1 = 0; a1 < p - 1; ++a1)
            for (std::uint64_t a2 = 0; a2 < p - 1; ++a2) {
                if (!chars[a1].is_primitive() && !chars[a2].is_primitive()) continue;
                auto r = prop1_check(p, 1, polys, {chars[a1], chars[a2]});
                ++checked;
                if (!r.satisfied()) ++violations;
            }
    }
    for (std::uint64_t p : {3, 5, 7}) {
        PrimePowerModulus mod = PrimePowerModulus::make(p, 2);
        const std::uint64_t phi = mod.group_order();
        std::vector<DirichletCharacter> chars;
        for (std::uint64_t a = 1; a <= phi; ++a) chars.push_back(DirichletCharacter::make(mod, a));
        for (std::uint64_t a1 = 0; a1 < phi; ++a1)
            for (std::uint64_t a2 = 0; a2 < phi; ++a2) {
                if (!chars[a1].is_primitive() && !chars[a2].is_primitive()) continue;
                auto r = prop1_check(p, 2, polys, {chars[a1], chars[a2]});
                ++checked;
                if (!r.satisfied()) ++violations;
            }
    }
    std::ostringstream os;
    os << "exhaustive |S| <= (D-1) p^(m(1-1/D)) audit, (T-1, T+1): " << checked
       << " character pairs with a primitive component, " << violations << " violations";
    verdict(2, violations == 0, os.str());
}

void criterion_3() {
    auto r = cochrane_check(IntPolynomial{0, 1, 1}, 3, 2);
    auto r2 = cochrane_check(IntPolynomial{0, 0, 1}, 3, 2);
    bool pass = r.satisfied() && std::abs(r.bound - 3.0) < 1e-12 && r2.satisfied() &&
                r2.bound == 0.0 && r2.sum.hist.exact_zero();
    std::ostringstream os;
    os << "prime-power instance: |sum chi(x^2+x) mod 9| = " << std::fixed << std::setprecision(6)
       << r.sum.abs_value << " <= 3, and sum chi(x^2) mod 9 vanishes exactly";
    verdict(3, pass, os.str());
}

void criterion_4() {
    const NiceFamily fam = *check_nice({IntPolynomial{-1, 1}}).family;
    const std::uint64_t exact = vm_bruteforce(101, fam, {1}, 4);
    auto audit = vm_claim_audit(101, fam, {1}, 4);

    const double diff = std::abs(audit.count - static_cast<double>(exact));
    const bool part_i = diff < 1e-3;

    // |phi(q) #V - 99^4| <= 100 * sqrt(101)^4 = 1,020,100, in exact integers
    const std::uint64_t s0_pow = 99ULL * 99 * 99 * 99;
    const std::uint64_t lhs_scaled = 100 * exact;
    const std::uint64_t dev = lhs_scaled > s0_pow ? lhs_scaled - s0_pow : s0_pow - lhs_scaled;
    const bool part_ii = dev <= 1'020'100;

    const double ratio = static_cast<double>(exact) * 100.0 / std::pow(101.0, 4);
    const bool part_iii = ratio >= 0.90 && ratio <= 0.95;

    std::ostringstream os;
    os << "counting identity at q=101, J=4: |chars - brute| = " << std::scientific
       << std::setprecision(2) << diff << ", |100 #V - 99^4| = " << dev
       << " (guaranteed <= 1020100), ratio = " << std::fixed << std::setprecision(4) << ratio
       << " in [0.90, 0.95]";
    verdict(4, part_i && part_ii && part_iii, os.str());
}

ExperimentReport run_experiment(std::uint64_t x, unsigned threads) {
    ExperimentConfig config;
    config.x = x;
    config.q = 17;
    config.functions = {MultiplicativeFunction::identity(), MultiplicativeFunction::euler_phi(),
                        MultiplicativeFunction::sigma()};
    config.threads = threads;
    return joint_distribution(config);
}

void criterion_5(const ExperimentReport& small, const ExperimentReport& big) {
    std::uint64_t total = 0;
    for (const auto& [tuple, count] : big.counts) total += count;
    const bool conserved = total == big.rhs_count;
    const bool mean_ok = big.stats.mean_class_count >= 500.0;
    const bool dev_ok = big.stats.max_rel_dev <= kDeviationAtX1e6;
    std::ostringstream os;
    os << "empirical joint distribution x=1e7, q=17 (n, phi, sigma): class sum " << total << " = rhs "
       << big.rhs_count << ", mean class " << std::fixed << std::setprecision(1)
       << big.stats.mean_class_count << " (>= 500), max rel dev " << std::setprecision(4)
       << big.stats.max_rel_dev << " (<= " << kDeviationAtX1e6 << " recorded at x=1e6)";
    verdict(5, conserved && mean_ok && dev_ok, os.str());

    std::ostringstream ts;
    ts << "total-variation trend: tv(1e7) = " << std::setprecision(4) << big.stats.tv_distance
       << " < tv(1e5) = " << small.stats.tv_distance;
    verdict(5, big.stats.tv_distance < small.stats.tv_distance, ts.str(), /*warn_only=*/true);
}

void criterion_6() {
    const NiceFamily fam = *check_nice({IntPolynomial{-1, 1}, IntPolynomial{1, 1}}).family;
    auto r = range_limit_demo(1'000'000, fam, 3);
    std::ostringstream os;
    os << "range-limit construction x=1e6, K=2, p0=3: p = " << r.p << ", primes in class = " << r.count
       << " >= (4/3) x / p^2 = " << std::fixed << std::setprecision(1) << r.threshold;
    verdict(6, r.p == 19 && r.pass, os.str());
}

void criterion_7() {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> forbidden;
    for (std::uint32_t p : primes_up_to(100)) forbidden.push_back({p, 0});
    auto r = sifted_interval_count(0, 1'000'000, forbidden);
    std::ostringstream os;
    os << "sifted interval X=1e6, primes <= 100, class 0: count " << r.count << ", |count/main - 1| = "
       << std::fixed << std::setprecision(4) << std::abs(r.relative_error) << " (<= 0.25)";
    verdict(7, std::abs(r.relative_error) <= 0.25, os.str());
}

CoprimeLowerResult run_coprime(unsigned threads) {
    return coprime_lower_bound_check(1'000'000, 17,
                                     {MultiplicativeFunction::identity(),
                                      MultiplicativeFunction::euler_phi(),
                                      MultiplicativeFunction::sigma()},
                                     threads);
}

void criterion_8(const CoprimeLowerResult& r) {
    std::ostringstream os;
    os << "coprime-value lower bound x=1e6, q=17: count " << r.count << " >= (1/20) x prod(1-1/p) = "
       << std::fixed << std::setprecision(1) << r.bound;
    // the bound is only promised eventually, so a small-x miss flags rather
    // than fails
    verdict(8, r.pass, os.str(), /*warn_only=*/true);
}

void criterion_9(const ExperimentReport& big8) {
    bool all_equal = true;
    std::string which;

    ExperimentReport big1 = run_experiment(10'000'000, 1);
    if (to_json(big1).dump() != to_json(big8).dump()) {
        all_equal = false;
        which += " equidist(1e7)";
    }

    auto cop1 = run_coprime(1);
    auto cop8 = run_coprime(8);
    if (to_json(cop1).dump() != to_json(cop8).dump()) {
        all_equal = false;
        which += " coprime-lower";
    }

    const NiceFamily fam2 = *check_nice({IntPolynomial{-1, 1}, IntPolynomial{1, 1}}).family;
    VmCharacterEngine eng1(25, fam2, 1);
    VmCharacterEngine eng8(25, fam2, 8);
    std::ostringstream v1, v8;
    for (const auto& u : unit_tuples(25, 2)) {
        auto a = eng1.count(u, 3), b = eng8.count(u, 3);
        v1 << std::hexfloat << a.value << ",";
        v8 << std::hexfloat << b.value << ",";
    }
    if (v1.str() != v8.str()) {
        all_equal = false;
        which += " vm-engine";
    }

    const NiceFamily fam1 = *check_nice({IntPolynomial{-1, 1}}).family;
    auto audit1 = to_json(vm_claim_audit(101, fam1, {1}, 4, 1)).dump();
    auto audit8 = to_json(vm_claim_audit(101, fam1, {1}, 4, 8)).dump();
    if (audit1 != audit8) {
        all_equal = false;
        which += " claim-audit";
    }

    std::ostringstream os;
    if (all_equal)
        os << "determinism: equidist(1e7), coprime-lower(1e6), vm engine and claim audit reports are "
              "byte-identical with 1 and 8 threads";
    else
        os << "determinism broke for:" << which;
    verdict(9, all_equal, os.str());
}

}  // namespace

int main() {
    std::cout << "equilab acceptance suite\n";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();

    ExperimentReport small = run_experiment(100'000, 8);
    ExperimentReport big = run_experiment(10'000'000, 8);
    criterion_5(small, big);
    criterion_6();
    criterion_7();
    criterion_8(run_coprime(8));
    criterion_9(big);

    std::cout << "summary: " << failures << " failures, " << warnings << " warnings\n";
    return failures;
}
