#include "qp/cli.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qp/congruence.hpp"
#include "qp/distance.hpp"
#include "qp/oracle.hpp"
#include "qp/period.hpp"

namespace qp {

namespace {

using nlohmann::json;

constexpr const char* kResidueConvention =
    "canonical residues lie in [0, p^e); the [1, p^e] convention maps residue 0 to p^e";

QuadPoly parse_poly(const std::string& spec) {
    std::istringstream in(spec);
    i64 a, b, c;
    char c1, c2;
    if (!(in >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',' || (in >> std::ws, !in.eof()))
        throw CLI::ValidationError("--poly", "expected three comma-separated integers a,b,c");
    if (a == 0) throw CLI::ValidationError("--poly", "leading coefficient a must be nonzero");
    return QuadPoly(a, b, c);
}

std::string str(const mpz_class& v) { return v.get_str(); }

std::string str(ExtNat v) {
    if (v.is_infinite()) return "inf";
    return std::to_string(v.value());
}

json poly_json(const QuadPoly& f) { return json::array({f.a, f.b, f.c}); }

void emit(std::ostream& out, bool as_json, const json& request, const json& result,
          const json& checks, const std::string& text) {
    if (as_json) {
        json doc;
        doc["schema_version"] = 1;
        doc["request"] = request;
        doc["result"] = result;
        doc["checks"] = checks;
        out << doc.dump(2) << "\n";
    } else {
        out << text;
        if (!checks.empty()) {
            out << "checks:\n";
            for (auto& [key, val] : checks.items()) out << "  " << key << ": " << val << "\n";
        }
    }
}

int run_solve(std::ostream& out, bool as_json, const QuadPoly& f, i64 p, unsigned e, bool brute,
              i64 cap) {
    SolutionSet s = solve(f, p, e);
    json request{{"subcommand", "solve"}, {"poly", poly_json(f)}, {"prime", p}, {"exp", e}};
    json result{{"p", p},
                {"e", e},
                {"modulus", std::to_string(s.modulus)},
                {"residues", s.residues},
                {"residue_convention", kResidueConvention}};
    json checks = json::object();
    std::ostringstream text;
    text << "S(f, " << p << "^" << e << ") mod " << s.modulus << " = {";
    for (std::size_t i = 0; i < s.residues.size(); ++i)
        text << (i ? ", " : "") << s.residues[i];
    text << "}\n";
    if (brute) {
        SolutionSet sb = solve_brute(f, p, e, cap);
        bool match = sb.residues == s.residues;
        checks["brute_force_matches"] = match;
    }
    emit(out, as_json, request, result, checks, text.str());
    return 0;
}

int run_mindist(std::ostream& out, bool as_json, const QuadPoly& f, i64 p, unsigned emax,
                bool brute, i64 cap) {
    json request{{"subcommand", "mindist"}, {"poly", poly_json(f)}, {"prime", p}, {"emax", emax}};
    json rows = json::array();
    json checks = json::object();
    bool all_match = true;
    std::ostringstream text;
    text << "minimal distances for p = " << p << ":\n";
    for (unsigned e = 0; e <= emax; ++e) {
        MinimalDistance d = min_distance_closed(f, p, e);
        rows.push_back({{"e", e}, {"d", str(d.d)}});
        text << "  e = " << e << ": d = " << d.d << "\n";
        if (brute && ipow(p, e) <= cap) {
            MinimalDistance dd = min_distance_from_set(solve_brute(f, p, e, cap));
            if (dd.d != d.d) all_match = false;
        }
    }
    json result{{"p", p}, {"distances", rows}, {"residue_convention", kResidueConvention}};
    if (brute) checks["brute_force_matches"] = all_match;
    emit(out, as_json, request, result, checks, text.str());
    return 0;
}

int run_period(std::ostream& out, bool as_json, const QuadPoly& f, i64 k) {
    PeriodReport rep = smallest_period(f, k);
    json request{{"subcommand", "period"}, {"poly", poly_json(f)}, {"k", k}};
    json eta = json::object();
    for (auto& [p, v] : rep.eta) eta[std::to_string(p)] = str(v);
    json lp = json::object();
    for (auto& [p, v] : rep.local_periods) lp[std::to_string(p)] = str(v);
    json exc;
    if (rep.exceptional_prime)
        exc = {{"p", rep.exceptional_prime->first}, {"nu_p_Ak", rep.exceptional_prime->second}};
    json result{{"normalized_poly", poly_json(rep.f)},
                {"k", k},
                {"B_k", str(rep.B_k)},
                {"L_k", str(rep.L_k)},
                {"xi2", str(rep.xi2)},
                {"eta", eta},
                {"A_k", str(rep.A_k)},
                {"local_periods", lp},
                {"exceptional_prime", exc},
                {"P", str(rep.P)},
                {"residue_convention", kResidueConvention}};
    json checks{{"local_global_product_matches", true}};
    std::ostringstream text;
    text << "f normalized to (" << rep.f.a << ", " << rep.f.b << ", " << rep.f.c << ")\n"
         << "B_k = " << rep.B_k << "\nA_k = " << rep.A_k << "\nsmallest period P = " << rep.P
         << "\n";
    emit(out, as_json, request, result, checks, text.str());
    return 0;
}

int run_oracle(std::ostream& out, bool as_json, const QuadPoly& f, i64 k, bool verify,
               int horizon, i64 cap, i64 n0) {
    OracleReport rep = make_oracle_report(f, k, n0, horizon, cap);
    json request{{"subcommand", "oracle"}, {"poly", poly_json(f)}, {"k", k},
                 {"window", horizon},    {"oracle_cap", cap}};
    json samples = json::array();
    for (auto& [n, g] : rep.samples) samples.push_back({{"n", n}, {"g", str(g)}});
    json divs = json::object();
    for (auto& [d, ok] : rep.divisor_checks) divs[str(d)] = ok;
    json result{{"samples", samples},
                {"empirical_period", str(rep.empirical_period)},
                {"window_start", rep.window_start},
                {"horizon", rep.horizon},
                {"divisor_checks", divs},
                {"note", "empirical periodicity over a finite window is evidence, not proof"},
                {"residue_convention", kResidueConvention}};
    json checks{{"hua_identity", rep.hua_consistent}};
    std::ostringstream text;
    text << "empirical smallest period = " << rep.empirical_period << " (window ["
         << rep.window_start << ", " << rep.window_start << " + " << horizon << "*B_k])\n";
    if (verify) {
        PeriodReport closed = smallest_period(f, k);
        checks["matches_closed_form"] = (closed.P == rep.empirical_period);
    }
    emit(out, as_json, request, result, checks, text.str());
    return 0;
}

int run_asym(std::ostream& out, bool as_json, bool as_csv, const QuadPoly& f, i64 k,
             const std::vector<i64>& points) {
    AsymReport rep = asymptotic_slope(f, k, points);
    if (as_csv) {
        out << "n,log_lcm,ratio,predicted_C\n";
        for (auto& s : rep.samples)
            out << s.n << "," << s.log_lcm << "," << s.ratio << "," << rep.predicted_C << "\n";
        return 0;
    }
    json request{{"subcommand", "asym"}, {"poly", poly_json(f)}, {"k", k}, {"points", points}};
    json samples = json::array();
    for (auto& s : rep.samples)
        samples.push_back({{"n", s.n}, {"log_lcm", s.log_lcm}, {"ratio", s.ratio}});
    json result{{"samples", samples},
                {"predicted_C", rep.predicted_C},
                {"rel_dev_at_largest", rep.rel_dev_at_largest}};
    std::ostringstream text;
    text << "predicted C = " << rep.predicted_C << "\n";
    for (auto& s : rep.samples)
        text << "  n = " << s.n << ": log lcm / log n = " << s.ratio << "\n";
    emit(out, as_json, request, result, json::object(), text.str());
    return 0;
}

int run_selftest(std::ostream& out, bool as_json) {
    long solver_checks = 0, distance_checks = 0, period_checks = 0;
    bool ok = true;

    for (i64 a = -3; a <= 3 && ok; ++a)
        for (i64 b = -3; b <= 3 && ok; ++b)
            for (i64 c = -3; c <= 3 && ok; ++c) {
                if (a == 0) continue;
                QuadPoly f(a, b, c);
                if (!f.is_primitive()) continue;
                for (i64 p : {2, 3, 5}) {
                    ExtNat prev(1);
                    for (unsigned e = 0; ipow(p, e) <= 512; ++e) {
                        SolutionSet closed = solve(f, p, e);
                        SolutionSet brute = solve_brute(f, p, e, 1 << 20);
                        if (closed.residues != brute.residues) ok = false;
                        ++solver_checks;
                        MinimalDistance d1 = min_distance_closed(f, p, e);
                        MinimalDistance d2 = min_distance_from_set(brute);
                        if (d1.d != d2.d || d1.d < prev) ok = false;
                        prev = d1.d;
                        ++distance_checks;
                    }
                }
            }

    for (auto& [coeffs, k] : std::vector<std::pair<std::array<i64, 3>, i64>>{
             {{1, 0, 1}, 1}, {{1, 0, 1}, 2}, {{1, 0, -4}, 2}, {{2, 1, 1}, 2}, {{1, 1, 1}, 3}}) {
        QuadPoly f(coeffs[0], coeffs[1], coeffs[2]);
        PeriodReport rep = smallest_period(f, k);
        mpz_class emp = empirical_smallest_period(f, k, -1, 3, 1 << 20);
        if (rep.P != emp) ok = false;
        for (i64 p : primes_of_Bk(rep.f, k))
            if (rep.f.a % p != 0 && local_period_via_bracket(rep.f, p, k) != rep.local_periods[p])
                ok = false;
        ++period_checks;
    }

    json request{{"subcommand", "selftest"}};
    json result{{"solver_checks", solver_checks},
                {"distance_checks", distance_checks},
                {"period_checks", period_checks},
                {"passed", ok}};
    std::ostringstream text;
    text << "selftest: " << solver_checks << " solver, " << distance_checks << " distance, "
         << period_checks << " period cross-checks; " << (ok ? "PASS" : "FAIL") << "\n";
    emit(out, as_json, request, result, json::object(), text.str());
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact smallest periods of g_{k,f} for quadratic f"};
    app.require_subcommand(1);

    std::string poly_spec;
    i64 prime = 2;
    unsigned exp = 1, emax = 6;
    i64 k = 1;
    bool brute = false, verify = false, as_json = false, as_csv = false;
    i64 cap = 1'000'000;
    int window = 3;
    i64 n0 = -1;
    std::vector<i64> points{1000, 10000, 100000};

    auto add_common = [&](CLI::App* sub, bool needs_poly) {
        if (needs_poly) sub->add_option("--poly", poly_spec, "coefficients a,b,c")->required();
        sub->add_flag("--json", as_json, "emit JSON");
        sub->add_option("--oracle-cap", cap, "bound for exhaustive scans")->capture_default_str();
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "roots of f(x) == 0 (mod p^e)");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--prime", prime, "prime p")->required();
    solve_cmd->add_option("--exp", exp, "exponent e")->required();
    solve_cmd->add_flag("--brute", brute, "cross-check against exhaustive scan");

    CLI::App* mindist_cmd = app.add_subcommand("mindist", "minimal root distances d_{p^e}");
    add_common(mindist_cmd, true);
    mindist_cmd->add_option("--prime", prime, "prime p")->required();
    mindist_cmd->add_option("--emax", emax, "table over e = 0..emax")->capture_default_str();
    mindist_cmd->add_flag("--brute", brute, "cross-check against exhaustive scan");

    CLI::App* period_cmd = app.add_subcommand("period", "smallest period of g_{k,f}");
    add_common(period_cmd, true);
    period_cmd->add_option("--k", k, "window size k")->required();

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "empirical period detection");
    add_common(oracle_cmd, true);
    oracle_cmd->add_option("--k", k, "window size k")->required();
    oracle_cmd->add_option("--window", window, "horizon multiplier")->capture_default_str();
    oracle_cmd->add_option("--n0", n0, "window start (default: past the zeros of f)");
    oracle_cmd->add_flag("--verify", verify, "compare against the closed-form period");

    CLI::App* asym_cmd = app.add_subcommand("asym", "log lcm growth slope");
    add_common(asym_cmd, true);
    asym_cmd->add_option("--k", k, "window size k")->required();
    asym_cmd->add_option("--points", points, "sample points")->delimiter(',');
    asym_cmd->add_flag("--csv", as_csv, "emit CSV instead of text/JSON");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the invariant grid");
    add_common(selftest_cmd, false);

    std::vector<const char*> argv;
    argv.push_back("qprog");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed())
            return run_solve(out, as_json, parse_poly(poly_spec), prime, exp, brute, cap);
        if (mindist_cmd->parsed())
            return run_mindist(out, as_json, parse_poly(poly_spec), prime, emax, brute, cap);
        if (period_cmd->parsed()) return run_period(out, as_json, parse_poly(poly_spec), k);
        if (oracle_cmd->parsed())
            return run_oracle(out, as_json, parse_poly(poly_spec), k, verify, window, cap, n0);
        if (asym_cmd->parsed())
            return run_asym(out, as_json, as_csv, parse_poly(poly_spec), k, points);
        if (selftest_cmd->parsed()) return run_selftest(out, as_json);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const NotEventuallyPeriodic& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace qp
