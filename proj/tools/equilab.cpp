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

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "equilab/report.hpp"
#include "equilab/version.hpp"

namespace {

using namespace equilab;

// Exit-code contract: 0 = pass, 2 = a checked mathematical statement was
// violated (a research event), 1 = usage or operational error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

// Accepts plain integers and scientific notation with a nonnegative exact
// value, e.g. "1e7" or "2.5e3" (must denote an integer).
std::uint64_t parse_integer(const std::string& text) {
    std::size_t epos = text.find_first_of("eE");
    if (epos == std::string::npos) {
        std::size_t used = 0;
        unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad integer: " + text);
        return v;
    }
    std::string mant = text.substr(0, epos);
    long exp10 = std::stol(text.substr(epos + 1));
    if (exp10 < 0) throw std::invalid_argument("bad integer (negative exponent): " + text);
    std::size_t dot = mant.find('.');
    std::string digits = mant;
    long frac = 0;
    if (dot != std::string::npos) {
        frac = static_cast<long>(mant.size() - dot - 1);
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
    }
    if (frac > exp10) throw std::invalid_argument("bad integer (not integral): " + text);
    std::uint64_t v = digits.empty() ? 0 : std::stoull(digits);
    for (long i = 0; i < exp10 - frac; ++i) {
        if (v > UINT64_MAX / 10) throw std::invalid_argument("integer overflow: " + text);
        v *= 10;
    }
    return v;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    std::size_t pos = text.find("..");
    if (pos == std::string::npos) throw std::invalid_argument("range must look like lo..hi");
    return {parse_integer(text.substr(0, pos)), parse_integer(text.substr(pos + 2))};
}

std::vector<std::string> split_top_level(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

MultiplicativeFunction function_from_token(const std::string& token) {
    if (token == "id" || token == "n") return MultiplicativeFunction::identity();
    if (token == "phi") return MultiplicativeFunction::euler_phi();
    if (token == "sigma") return MultiplicativeFunction::sigma();
    if (!token.empty() && token.front() == '[')
        return MultiplicativeFunction::completely_mult(polynomial_from_json(Json::parse(token)));
    throw std::invalid_argument("unknown polynomial token '" + token +
                                "' (expected id, phi, sigma, or [c0,c1,...])");
}

MultiplicativeFunction function_from_json(const Json& item) {
    if (item.is_string()) return function_from_token(item.get<std::string>());
    if (item.is_array()) return MultiplicativeFunction::completely_mult(polynomial_from_json(item));
    if (item.is_object()) {
        Json poly = item.at("poly");
        MultiplicativeFunction f =
            poly.is_string() ? function_from_token(poly.get<std::string>())
                             : MultiplicativeFunction::completely_mult(polynomial_from_json(poly));
        if (item.contains("rule")) {
            std::string rule = item["rule"].get<std::string>();
            if (rule == "completely_mult")
                f = MultiplicativeFunction::completely_mult(f.prime_poly);
            else if (rule == "euler_phi")
                f = MultiplicativeFunction::euler_phi();
            else if (rule == "sigma")
                f = MultiplicativeFunction::sigma();
            else if (rule == "identity")
                f = MultiplicativeFunction::identity();
            else
                throw std::invalid_argument("unknown rule '" + rule + "'");
        }
        return f;
    }
    throw std::invalid_argument("bad family entry in JSON file");
}

// A family spec is either a comma list of tokens (id, phi, sigma, [0,1,1])
// or the path of a JSON file with a "functions" array.
std::vector<MultiplicativeFunction> parse_family(const std::string& spec) {
    std::vector<MultiplicativeFunction> functions;
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        std::ifstream in(spec);
        if (!in) throw std::invalid_argument("cannot open family file " + spec);
        Json doc = Json::parse(in);
        const Json& list = doc.is_array() ? doc : doc.at("functions");
        for (const auto& item : list) functions.push_back(function_from_json(item));
    } else {
        for (const std::string& token : split_top_level(spec)) functions.push_back(function_from_token(token));
    }
    if (functions.empty()) throw std::invalid_argument("empty family spec");
    return functions;
}

std::vector<IntPolynomial> family_polys(const std::vector<MultiplicativeFunction>& functions) {
    std::vector<IntPolynomial> polys;
    for (const auto& f : functions) polys.push_back(f.prime_poly);
    return polys;
}

std::vector<std::uint64_t> parse_tuple(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (const std::string& part : split_top_level(text)) out.push_back(parse_integer(part));
    return out;
}

struct OutputSink {
    std::string out_path;
    std::string format = "json";
    std::string subcommand;
    std::vector<std::string> argv;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    // Prints the report to stdout or writes it to --out; a run manifest is
    // written alongside any file report.
    void deliver(const Json& report, const std::string& summary, const std::string& csv = "") {
        const std::string body = format == "csv" && !csv.empty() ? csv : report.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + out_path);
            out << body;
            out.close();
            const auto wall =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            Json manifest{{"subcommand", subcommand},
                          {"argv", argv},
                          {"artifact_version", equilab::version},
                          {"wall_ms", wall.count()},
                          {"outputs", Json::array({out_path})}};
            std::ofstream mout(out_path + ".manifest.json", std::ios::binary);
            mout << manifest.dump(2) << "\n";
        }
        std::cerr << summary << "\n";
    }
};

int run_command(const std::vector<std::string>& args);

int cmd_check_family(const std::string& spec, OutputSink& sink) {
    auto functions = parse_family(spec);
    auto result = check_nice(family_polys(functions));
    std::string summary = result.ok() ? "family is nice" : "family violates niceness:";
    for (const auto& v : result.violations) summary += " " + v + ";";
    sink.deliver(to_json(result), summary);
    return result.ok() ? kExitOk : kExitViolation;
}

int cmd_good_primes(const std::string& spec, const std::string& range, OutputSink& sink) {
    auto functions = parse_family(spec);
    auto check = check_nice(family_polys(functions));
    if (!check.ok()) {
        std::cerr << "family is not nice\n";
        return kExitUsage;
    }
    auto [lo, hi] = parse_range(range);
    auto primes = good_primes_in_range(*check.family, lo, hi);
    Json j{{"family_degree_sum", check.family->degree_sum},
           {"d_main", check.family->d_main},
           {"range", Json::array({lo, hi})},
           {"good_primes", primes}};
    sink.deliver(j, "good primes in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]: " +
                        std::to_string(primes.size()));
    return kExitOk;
}

int cmd_charsum_audit(const std::string& spec, const std::string& range, unsigned m, std::uint64_t q,
                      unsigned threads, OutputSink& sink) {
    auto functions = parse_family(spec);
    auto check = check_nice(family_polys(functions));
    if (!check.ok()) {
        std::cerr << "family is not nice\n";
        return kExitUsage;
    }
    const NiceFamily& fam = *check.family;
    const unsigned K = fam.K();
    Json audits = Json::array();
    std::uint64_t checked = 0, violations = 0, skipped = 0;
    double max_ratio = 0.0;

    auto run_prime_power = [&](std::uint64_t p) {
        PrimePowerModulus mod = PrimePowerModulus::make(p, m);
        const std::uint64_t phi = mod.group_order();
        double tuples = 1.0;
        for (unsigned k = 0; k < K; ++k) tuples *= static_cast<double>(phi);
        if (tuples > 1e6) throw std::invalid_argument("audit tuple count above the 1e6 gate");
        std::vector<DirichletCharacter> chars;
        chars.reserve(phi);
        for (std::uint64_t a = 1; a <= phi; ++a) chars.push_back(DirichletCharacter::make(mod, a));
        std::vector<std::uint64_t> digits(K, 0);
        Json viol = Json::array();
        std::uint64_t local_checked = 0, local_skipped = 0;
        double local_max = 0.0;
        for (;;) {
            bool primitive = false;
            for (unsigned k = 0; k < K; ++k)
                if (chars[digits[k]].is_primitive()) primitive = true;
            if (primitive) {
                std::vector<DirichletCharacter> tuple;
                for (unsigned k = 0; k < K; ++k) tuple.push_back(chars[digits[k]]);
                CharSumResult r = prop1_check(p, m, fam.polys, std::move(tuple));
                ++local_checked;
                if (r.bound > 0) local_max = std::max(local_max, r.sum.abs_value / r.bound);
                if (!r.satisfied()) {
                    ++violations;
                    Json chars_json = Json::array();
                    for (unsigned k = 0; k < K; ++k) chars_json.push_back(digits[k] + 1);
                    viol.push_back(charsum_result_json(r, mod.modulus(), fam.polys, chars_json));
                }
            } else {
                ++local_skipped;
            }
            unsigned i = 0;
            while (i < K && ++digits[i] == phi) digits[i++] = 0;
            if (i == K) break;
        }
        checked += local_checked;
        skipped += local_skipped;
        max_ratio = std::max(max_ratio, local_max);
        audits.push_back(Json{{"p", p},
                              {"m", m},
                              {"tuples_checked", local_checked},
                              {"tuples_without_primitive", local_skipped},
                              {"max_abs_over_bound", local_max},
                              {"violations", viol}});
    };

    (void)threads;
    if (q != 0) {
        // composite aggregate audit over all non-all-trivial tuples mod q
        auto fact = factorize_u64(q);
        std::vector<PrimePowerModulus> moduli;
        for (const auto& [p, e] : fact) moduli.push_back(PrimePowerModulus::make(p, e));
        auto grid = character_exponent_grid(moduli);
        double tuples = 1.0;
        for (unsigned k = 0; k < K; ++k) tuples *= static_cast<double>(grid.size());
        if (tuples > 1e6) throw std::invalid_argument("audit tuple count above the 1e6 gate");
        const std::uint64_t total = static_cast<std::uint64_t>(tuples + 0.5);
        Json viol = Json::array();
        for (std::uint64_t t = 0; t < total; ++t) {
            std::uint64_t rest = t;
            std::vector<std::vector<DirichletCharacter>> locals(K);
            for (unsigned k = 0; k < K; ++k) {
                std::uint64_t c = rest % grid.size();
                rest /= grid.size();
                for (std::size_t i = 0; i < moduli.size(); ++i)
                    locals[k].push_back(DirichletCharacter::make(moduli[i], grid[c][i]));
            }
            CharacterTuple tuple = compose_tuple(q, std::move(locals));
            if (tuple.all_trivial()) {
                ++skipped;
                continue;
            }
            CharSumResult r = composite_bound_check(q, fam, tuple);
            ++checked;
            if (r.bound > 0) max_ratio = std::max(max_ratio, r.sum.abs_value / r.bound);
            if (!r.satisfied()) {
                ++violations;
                viol.push_back(charsum_result_json(r, q, fam.polys, to_json(tuple)["characters"]));
            }
        }
        audits.push_back(Json{{"q", q},
                              {"tuples_checked", checked},
                              {"max_abs_over_bound", max_ratio},
                              {"violations", viol}});
    } else {
        auto [lo, hi] = parse_range(range);
        for_each_prime(lo, hi, [&](std::uint64_t p) { run_prime_power(p); });
    }

    Json j{{"checked", checked},
           {"violations", violations},
           {"tuples_without_primitive", skipped},
           {"max_abs_over_bound", max_ratio},
           {"audits", audits}};
    sink.deliver(j, "charsum audit: " + std::to_string(checked) + " sums checked, " +
                        std::to_string(violations) + " violations");
    return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_vm(std::uint64_t q, const std::string& spec, unsigned J, const std::string& u_text,
           const std::string& method, bool claim_audit, unsigned threads, OutputSink& sink) {
    auto functions = parse_family(spec);
    auto check = check_nice(family_polys(functions));
    if (!check.ok()) {
        std::cerr << "family is not nice\n";
        return kExitUsage;
    }
    const NiceFamily& fam = *check.family;
    std::vector<std::uint64_t> u = parse_tuple(u_text);
    Json j{{"q", q}, {"J", J}, {"u", u}};
    bool mismatch = false;
    std::optional<std::uint64_t> brute;
    if (method == "brute" || method == "both") {
        brute = vm_bruteforce(q, fam, u, J);
        j["count_bruteforce"] = *brute;
    }
    if (method == "chars" || method == "both" || claim_audit) {
        auto est = vm_via_characters(q, fam, u, J, threads);
        j["count_characters"] = est.value;
        j["rounding_budget"] = est.budget;
        if (brute) {
            double diff = std::abs(static_cast<double>(*brute) - est.value);
            j["abs_difference"] = diff;
            mismatch = diff > std::max(1e-6, 10.0 * est.budget);
        }
    }
    if (claim_audit) j["claim_audit"] = to_json(vm_claim_audit(q, fam, u, J, threads));
    std::string summary = "vm count mod " + std::to_string(q) + ": ";
    if (brute) summary += "brute " + std::to_string(*brute) + " ";
    if (j.contains("count_characters")) summary += "chars " + std::to_string(j["count_characters"].get<double>());
    if (mismatch) summary += "  MISMATCH";
    sink.deliver(j, summary);
    return mismatch ? kExitViolation : kExitOk;
}

int cmd_equidist(std::uint64_t x, std::uint64_t q, const std::string& spec,
                 const std::vector<std::string>& targets, unsigned threads, std::uint64_t segment_width,
                 OutputSink& sink) {
    ExperimentConfig config;
    config.x = x;
    config.q = q;
    config.functions = parse_family(spec);
    config.threads = threads;
    if (segment_width) config.segment_width = segment_width;
    for (const auto& t : targets) config.targets.push_back(parse_tuple(t));
    ExperimentReport report = joint_distribution(config);
    sink.deliver(to_json(report),
                 "equidist x=" + std::to_string(x) + " q=" + std::to_string(q) + ": rhs " +
                     std::to_string(report.rhs_count) + ", max rel dev " +
                     std::to_string(report.stats.max_rel_dev) + ", tv " +
                     std::to_string(report.stats.tv_distance),
                 experiment_csv(report));
    return kExitOk;
}

int cmd_semismooth(std::uint64_t x, std::uint64_t y, unsigned J, unsigned threads, OutputSink& sink) {
    SemismoothResult r = semismooth_count(x, y, J, threads);
    sink.deliver(to_json(r, x, y, J), "semismooth count " + std::to_string(r.count) + ", ratio " +
                                          std::to_string(r.ratio));
    return kExitOk;
}

int cmd_sift(std::uint64_t x, std::uint64_t start, const std::string& range, std::uint64_t a,
             OutputSink& sink) {
    auto [lo, hi] = parse_range(range);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> forbidden;
    for_each_prime(lo, hi, [&](std::uint64_t p) { forbidden.push_back({p, a % p}); });
    SiftResult r = sifted_interval_count(start, start + x, forbidden);
    sink.deliver(to_json(r, start, start + x),
                 "sifted count " + std::to_string(r.count) + ", relative error " +
                     std::to_string(r.relative_error));
    return kExitOk;
}

int cmd_coprime_lower(std::uint64_t x, std::uint64_t q, const std::string& spec, unsigned threads,
                      OutputSink& sink) {
    auto functions = parse_family(spec);
    CoprimeLowerResult r = coprime_lower_bound_check(x, q, functions, threads);
    sink.deliver(to_json(r), std::string("coprime lower bound ") + (r.pass ? "holds" : "FLAGGED") +
                                 ": count " + std::to_string(r.count) + " vs bound " +
                                 std::to_string(r.bound));
    // The lemma only promises the bound eventually; a small-x miss is a flag,
    // not a violation.
    return kExitOk;
}

int cmd_range_limit(std::uint64_t x, const std::string& spec, std::uint64_t p0, OutputSink& sink) {
    auto functions = parse_family(spec);
    auto check = check_nice(family_polys(functions));
    if (!check.ok()) {
        std::cerr << "family is not nice\n";
        return kExitUsage;
    }
    RangeLimitResult r = range_limit_demo(x, *check.family, p0);
    sink.deliver(to_json(r, x, p0),
                 "range-limit: p=" + std::to_string(r.p) + " count " + std::to_string(r.count) +
                     " vs threshold " + std::to_string(r.threshold) + (r.pass ? " (pass)" : " (FAIL)"));
    return r.pass ? kExitOk : kExitViolation;
}

int cmd_replay(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "cannot open manifest " << manifest_path << "\n";
        return kExitUsage;
    }
    Json manifest = Json::parse(in);
    std::vector<std::string> args;
    for (const auto& a : manifest.at("argv")) args.push_back(a.get<std::string>());
    return run_command(args);
}

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"equilab: finite checks and experiments for joint residue equidistribution of "
                 "polynomial-like multiplicative functions"};
    app.require_subcommand(1);

    std::string family_spec, polys_spec, p_range, u_text, method = "both", manifest_path, format = "json";
    std::vector<std::string> targets;
    std::string x_text, q_text, y_text, p0_text, a_text = "0", start_text = "0", sw_text;
    unsigned J = 1, m = 1, threads = 1;
    bool claim_audit = false;
    std::string out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "write the report to this path (with a manifest alongside)");
        sub->add_option("--format", format, "report format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--threads", threads, "worker cap; never changes any reported number");
    };

    CLI::App* check = app.add_subcommand("check-family", "validate niceness of a family");
    check->add_option("--polys,--family", polys_spec, "comma list: id, phi, sigma, or [c0,c1,...]")
        ->required();
    add_common(check);

    CLI::App* gp = app.add_subcommand("good-primes", "list good primes in a range");
    gp->add_option("--polys,--family", polys_spec)->required();
    gp->add_option("--p-range", p_range, "prime range lo..hi")->required();
    add_common(gp);

    CLI::App* audit = app.add_subcommand("charsum-audit", "exhaustive character-sum bound audit");
    audit->add_option("--family,--polys", family_spec)->required();
    audit->add_option("--p-range", p_range, "audit every prime in lo..hi");
    audit->add_option("--m", m, "prime-power exponent (default 1)");
    audit->add_option("--q", q_text, "audit all tuples modulo a fixed odd q instead of a prime range");
    audit->add_flag("--exhaustive", "audit every tuple (always on; flag kept for discoverability)");
    add_common(audit);

    CLI::App* vm = app.add_subcommand("vm", "count product-constrained unit tuples");
    vm->add_option("--q", q_text)->required();
    vm->add_option("--family,--polys", family_spec)->required();
    vm->add_option("--J", J, "tuple length")->required();
    vm->add_option("--u", u_text, "target units, comma separated")->required();
    vm->add_option("--method", method)->check(CLI::IsMember({"brute", "chars", "both"}));
    vm->add_flag("--claim-audit", claim_audit, "include the main-term/error audit block");
    add_common(vm);

    CLI::App* eq = app.add_subcommand("equidist", "joint distribution experiment over n <= x");
    eq->add_option("--x", x_text)->required();
    eq->add_option("--q", q_text)->required();
    eq->add_option("--family", family_spec)->required();
    eq->add_option("--a", targets, "target class tuple(s), e.g. --a 1,1,1");
    eq->add_option("--segment-width", sw_text);
    add_common(eq);

    CLI::App* ss = app.add_subcommand("semismooth", "count n <= x with small J-th largest prime factor");
    ss->add_option("--x", x_text)->required();
    ss->add_option("--y", y_text)->required();
    ss->add_option("--J", J)->required();
    add_common(ss);

    CLI::App* sift = app.add_subcommand("sift", "sifted interval count against the sieve main term");
    sift->add_option("--x", x_text, "interval length")->required();
    sift->add_option("--p-range", p_range, "forbid one class mod every prime in lo..hi")->required();
    sift->add_option("--a", a_text, "forbidden class (applied mod each prime)");
    sift->add_option("--u", start_text, "interval start (default 0)");
    add_common(sift);

    CLI::App* cl = app.add_subcommand("coprime-lower", "count n with values coprime to q vs the lower bound");
    cl->add_option("--x", x_text)->required();
    cl->add_option("--q", q_text)->required();
    cl->add_option("--family", family_spec)->required();
    add_common(cl);

    CLI::App* rl = app.add_subcommand("range-limit", "the failure-of-uniformity construction");
    rl->add_option("--x", x_text)->required();
    rl->add_option("--family,--polys", family_spec)->required();
    rl->add_option("--p0", p0_text)->required();
    add_common(rl);

    CLI::App* replay = app.add_subcommand("replay", "re-run a command from its manifest");
    replay->add_option("--manifest", manifest_path)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::cerr << (e.get_exit_code() == 0 ? "" : "argument error: ") << e.what() << "\n";
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    OutputSink sink;
    sink.out_path = out_path;
    sink.format = format;
    sink.argv = args;

    try {
        if (app.got_subcommand(check)) {
            sink.subcommand = "check-family";
            return cmd_check_family(polys_spec, sink);
        }
        if (app.got_subcommand(gp)) {
            sink.subcommand = "good-primes";
            return cmd_good_primes(polys_spec, p_range, sink);
        }
        if (app.got_subcommand(audit)) {
            sink.subcommand = "charsum-audit";
            if (p_range.empty() && q_text.empty())
                throw std::invalid_argument("charsum-audit needs --p-range or --q");
            return cmd_charsum_audit(family_spec, p_range, m, q_text.empty() ? 0 : parse_integer(q_text),
                                     threads, sink);
        }
        if (app.got_subcommand(vm)) {
            sink.subcommand = "vm";
            return cmd_vm(parse_integer(q_text), family_spec, J, u_text, method, claim_audit, threads, sink);
        }
        if (app.got_subcommand(eq)) {
            sink.subcommand = "equidist";
            return cmd_equidist(parse_integer(x_text), parse_integer(q_text), family_spec, targets, threads,
                                sw_text.empty() ? 0 : parse_integer(sw_text), sink);
        }
        if (app.got_subcommand(ss)) {
            sink.subcommand = "semismooth";
            return cmd_semismooth(parse_integer(x_text), parse_integer(y_text), J, threads, sink);
        }
        if (app.got_subcommand(sift)) {
            sink.subcommand = "sift";
            return cmd_sift(parse_integer(x_text), parse_integer(start_text), p_range,
                            parse_integer(a_text), sink);
        }
        if (app.got_subcommand(cl)) {
            sink.subcommand = "coprime-lower";
            return cmd_coprime_lower(parse_integer(x_text), parse_integer(q_text), family_spec, threads, sink);
        }
        if (app.got_subcommand(rl)) {
            sink.subcommand = "range-limit";
            return cmd_range_limit(parse_integer(x_text), family_spec, parse_integer(p0_text), sink);
        }
        if (app.got_subcommand(replay)) return cmd_replay(manifest_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_command(args);
}
