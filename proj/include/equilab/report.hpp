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

#ifndef EQUILAB_REPORT_HPP
#define EQUILAB_REPORT_HPP

#include <json.hpp>

#include <sstream>
#include <string>

#include "equilab/chargroup.hpp"
#include "equilab/charsum.hpp"
#include "equilab/families.hpp"
#include "equilab/lab.hpp"
#include "equilab/multfun.hpp"
#include "equilab/poly.hpp"

namespace equilab {

using Json = nlohmann::ordered_json;

inline Json to_json(const IntPolynomial& f) {
    Json arr = Json::array();
    for (const BigInt& c : f.coefficients()) {
        if (c >= -((BigInt(1) << 53)) && c <= (BigInt(1) << 53))
            arr.push_back(c.convert_to<long long>());
        else
            arr.push_back(c.str());
    }
    return arr;
}

inline IntPolynomial polynomial_from_json(const Json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("polynomial JSON must be a coefficient array");
    std::vector<BigInt> coeffs;
    for (const auto& item : arr) {
        if (item.is_number_integer())
            coeffs.emplace_back(item.get<long long>());
        else if (item.is_string())
            coeffs.emplace_back(BigInt(item.get<std::string>()));
        else
            throw std::invalid_argument("polynomial coefficients must be integers or integer strings");
    }
    return IntPolynomial(std::move(coeffs));
}

inline Json to_json(const DirichletCharacter& chi) {
    return Json{{"p", chi.modulus().p()}, {"m", chi.modulus().m()}, {"A", chi.exponent()}};
}

inline Json to_json(const CharacterTuple& tuple) {
    Json chars = Json::array();
    for (const auto& row : tuple.locals()) {
        Json per_prime = Json::array();
        for (const auto& chi : row) per_prime.push_back(to_json(chi));
        chars.push_back(per_prime);
    }
    Json type = Json::object();
    for (const auto& [p, fp] : tuple.type()) type[std::to_string(p)] = fp;
    return Json{{"q", tuple.q()}, {"characters", chars}, {"type", type},
                {"q0", tuple.q0()}, {"q1", tuple.q1()}};
}

inline Json to_json(const NiceCheckResult& result) {
    Json j;
    j["nice"] = result.ok();
    if (result.ok()) {
        Json polys = Json::array();
        for (const auto& f : result.family->polys) polys.push_back(to_json(f));
        j["polys"] = polys;
        j["degree_sum"] = result.family->degree_sum;
        j["d_main"] = result.family->d_main;
    }
    j["violations"] = result.violations;
    return j;
}

inline Json to_json(const GoodPrimeReport& report) {
    return Json{{"p", report.p},
                {"greater_than_5", report.greater_than_5},
                {"above_degree_square", report.above_degree_square},
                {"leading_coeffs_ok", report.leading_coeffs_ok},
                {"discriminant_ok", report.discriminant_ok},
                {"good", report.good()}};
}

inline Json charsum_result_json(const CharSumResult& result, std::uint64_t modulus,
                                const std::vector<IntPolynomial>& polys, const Json& characters) {
    Json polys_json = Json::array();
    for (const auto& f : polys) polys_json.push_back(to_json(f));
    return Json{{"modulus", modulus},
                {"polys", polys_json},
                {"characters", characters},
                {"abs_value", result.sum.abs_value},
                {"bound", result.bound},
                {"bound_name", bound_name(result.bound_kind)},
                {"satisfied", result.satisfied()},
                {"status", status_name(result.status)},
                {"rounding_budget", result.sum.rounding_budget},
                {"conditions", result.conditions}};
}

inline Json to_json(const SemismoothResult& result, std::uint64_t x, std::uint64_t y, unsigned J) {
    return Json{{"x", x},           {"y", y},
                {"J", J},           {"count", result.count},
                {"reference", result.reference}, {"ratio", result.ratio}};
}

inline Json to_json(const ClaimAuditReport& report) {
    return Json{{"q", report.q},
                {"K", report.K},
                {"J", report.J},
                {"count", report.count},
                {"rounding_budget", report.budget},
                {"trivial_sum", report.trivial_sum},
                {"main_term", report.main_term},
                {"ratio_to_q_scale", report.ratio_to_q_scale},
                {"bound_applicable", report.bound_applicable},
                {"per_tuple_bound", report.per_tuple_bound},
                {"aggregate_bound", report.aggregate_bound},
                {"guaranteed_count_error", report.guaranteed_count_error},
                {"nontrivial_pow_sum", report.nontrivial_pow_sum},
                {"exp_tail_applicable", report.exp_tail_applicable},
                {"exp_tail_coeff", report.exp_tail_coeff}};
}

inline std::string class_key(const std::vector<std::uint64_t>& tuple) {
    std::string key;
    for (std::size_t k = 0; k < tuple.size(); ++k) key += (k ? "," : "") + std::to_string(tuple[k]);
    return key;
}

inline Json to_json(const ExperimentReport& report) {
    Json config{{"x", report.x},
                {"q", report.q},
                {"functions", report.function_names}};
    Json counts = Json::object();
    for (const auto& [tuple, count] : report.counts) counts[class_key(tuple)] = count;
    Json stats{{"max_class_count", report.stats.max_class_count},
               {"min_class_count", report.stats.min_class_count},
               {"mean_class_count", report.stats.mean_class_count},
               {"max_rel_dev", report.stats.max_rel_dev},
               {"tv_distance", report.stats.tv_distance},
               {"chi_square", report.stats.chi_square}};
    return Json{{"config", config},
                {"counts", counts},
                {"rhs_count", report.rhs_count},
                {"class_total", report.class_total},
                {"stats", stats},
                {"delta_q", report.delta_q},
                {"logx_pow_inv_k", report.logx_pow_inv_k},
                {"q_within_theorem_range", report.q_within_theorem_range},
                {"notes", report.notes}};
}

inline std::string experiment_csv(const ExperimentReport& report) {
    std::ostringstream os;
    const unsigned K = report.counts.empty() ? 0 : static_cast<unsigned>(report.counts.begin()->first.size());
    for (unsigned k = 1; k <= K; ++k) os << "class_" << k << ",";
    os << "count\n";
    for (const auto& [tuple, count] : report.counts) {
        for (std::uint64_t a : tuple) os << a << ",";
        os << count << "\n";
    }
    return os.str();
}

inline Json to_json(const CoprimeLowerResult& result) {
    return Json{{"x", result.x},
                {"q", result.q},
                {"count", result.count},
                {"flagged_primes", result.flagged_primes},
                {"sieve_product", result.sieve_product},
                {"bound", result.bound},
                {"pass", result.pass}};
}

inline Json to_json(const SiftResult& result, std::uint64_t u, std::uint64_t v) {
    return Json{{"interval_start", u},
                {"interval_end", v},
                {"count", result.count},
                {"main_term", result.main_term},
                {"relative_error", result.relative_error},
                {"lemma_error_scale", result.lemma_error_scale}};
}

inline Json to_json(const RangeLimitResult& result, std::uint64_t x, std::uint64_t p0) {
    return Json{{"x", x},
                {"p0", p0},
                {"X", result.X},
                {"candidate_primes", result.candidate_primes},
                {"p", result.p},
                {"count", result.count},
                {"threshold", result.threshold},
                {"pass", result.pass}};
}

}  // namespace equilab

#endif
