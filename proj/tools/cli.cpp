#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lfa/apoints.hpp"
#include "lfa/arith.hpp"
#include "lfa/calibration.hpp"
#include "lfa/characters.hpp"
#include "lfa/errors.hpp"
#include "lfa/lfunc.hpp"
#include "lfa/theorem.hpp"

namespace lfa::cli {

namespace {

std::complex<double> parse_complex_impl(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw domain_error("empty complex literal");

    auto to_double = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size())
            throw domain_error("bad numeric literal '" + t + "'");
        return v;
    };

    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // split at the last top-level +/- (not an exponent sign)
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            const char c = body[k];
            if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) return {0.0, to_double(body)};
        const std::string re = body.substr(0, split);
        const std::string im = body.substr(split);
        return {to_double(re.empty() ? "0" : re), to_double(im)};
    }
    return {to_double(s), 0.0};
}

std::string cache_dir_from(const std::string& flag_value) {
    if (const char* env = std::getenv("APOINT_CACHE_DIR"); env && *env) return env;
    return flag_value;
}

DirichletCharacter make_character(std::int64_t q, std::int64_t index) {
    if (q < 1) throw domain_error("modulus must be >= 1");
    if (index < 0 || index >= euler_phi(q))
        throw domain_error("character index out of range (phi(q) = " +
                           std::to_string(euler_phi(q)) + ")");
    return DirichletCharacter(q, index);
}

nlohmann::json complex_json(cplx z) { return {z.real(), z.imag()}; }

int cmd_eval(std::int64_t q, std::int64_t chi_idx, const std::string& s_text, int deriv,
             const std::string& method) {
    const auto chi = make_character(q, chi_idx);
    const cplx s = parse_complex(s_text);
    EvalMethod m;
    if (method == "reference")
        m = EvalMethod::hurwitz_direct;
    else if (method == "rane")
        m = EvalMethod::rane_afe;
    else if (method == "lprime-afe")
        m = EvalMethod::lprime_afe;
    else
        throw domain_error("unknown method '" + method + "'");
    const auto ev = evaluate(s, chi, deriv, m);
    nlohmann::json j;
    j["q"] = q;
    j["index"] = chi_idx;
    j["s"] = complex_json(ev.s);
    j["deriv"] = deriv;
    j["value"] = complex_json(ev.value);
    j["method"] = method;
    j["est_error"] = ev.est_error;
    std::cout << j.dump(1) << "\n";
    return kExitOk;
}

int cmd_scan(std::int64_t q, std::int64_t chi_idx, const std::string& a_text, double t_max,
             const std::string& cache_flag, bool include_left) {
    const auto chi = make_character(q, chi_idx);
    if (!chi.is_primitive()) throw domain_error("scan requires a primitive character");
    const cplx a = parse_complex(a_text);
    ApointScanner scanner(chi, a);
    double t_used = 0.0;
    auto pts = scan_cached(scanner, cache_dir_from(cache_flag), t_max, &t_used);
    const auto rep = scanner.count(t_used);
    if (!include_left) pts = nontrivial_points(pts);

    nlohmann::json j;
    j["q"] = q;
    j["index"] = chi_idx;
    j["a"] = complex_json(a);
    j["t_used"] = t_used;
    j["strip"] = {scanner.strip_left(), scanner.strip_right()};
    j["exact_count"] = rep.exact_count;
    j["main_term"] = rep.main_term;
    j["c_a"] = rep.c_a;
    j["discrepancy"] = static_cast<double>(rep.exact_count) - rep.main_term;
    j["n_points"] = pts.size();
    std::cout << j.dump(1) << "\n";
    return kExitOk;
}

int cmd_verify(std::int64_t q, std::int64_t chi_idx, const std::string& a_text, double X,
               const std::string& grid_text, const std::string& mode_text,
               const std::string& sign_text, const std::string& format,
               const std::string& out_path, const std::string& plot_path,
               const std::string& cache_flag, bool no_timestamp, bool include_left,
               std::int64_t sieve_limit) {
    const auto chi = make_character(q, chi_idx);
    if (!chi.is_primitive()) throw domain_error("verify requires a primitive character");

    ResidualTableConfig cfg;
    cfg.a = parse_complex(a_text);
    cfg.X = X;
    cfg.t_grid = parse_grid(grid_text);
    cfg.cache_dir = cache_dir_from(cache_flag);
    cfg.include_nonpositive_beta = include_left;
    cfg.sieve_limit = sieve_limit;
    if (mode_text == "lemma-zero")
        cfg.mode = RhsMode::lemma_zero;
    else if (mode_text == "theorem1")
        cfg.mode = RhsMode::theorem1;
    else if (mode_text == "corollary")
        cfg.mode = RhsMode::corollary;
    else
        throw domain_error("unknown mode '" + mode_text + "'");
    if (cfg.mode == RhsMode::lemma_zero && std::abs(cfg.a) > 1e-12)
        throw domain_error("lemma-zero mode requires a = 0 (use theorem1)");

    std::vector<PhaseSign> signs;
    if (sign_text == "plus")
        signs = {PhaseSign::plus};
    else if (sign_text == "minus")
        signs = {PhaseSign::minus};
    else if (sign_text == "both")
        signs = {PhaseSign::plus, PhaseSign::minus};
    else
        throw domain_error("unknown phase sign '" + sign_text + "'");

    std::vector<VerificationRow> rows;
    for (const auto sign : signs) {
        cfg.phase_sign = sign;
        auto part = residual_table(chi, cfg);
        rows.insert(rows.end(), part.begin(), part.end());
    }

    const std::string table =
        format == "json" ? rows_to_json(rows) : rows_to_csv(rows, !no_timestamp);
    if (out_path.empty() || out_path == "-") {
        std::cout << table;
        if (format == "json") std::cout << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw resource_error("cannot write " + out_path);
        out << table;
    }
    if (!plot_path.empty()) {
        std::ofstream plot(plot_path);
        if (!plot) throw resource_error("cannot write " + plot_path);
        plot << rows_to_plot(rows);
    }

    bool any_failed = false, any_breach = false;
    for (const auto& r : rows) {
        if (r.failed) {
            any_failed = true;
            continue;
        }
        if (cfg.mode == RhsMode::corollary) {
            const double env = calib::kClosedFormBigC * r.t_used *
                               std::exp(-calib::kClosedFormSmallC *
                                        std::sqrt(std::log(r.t_used)));
            // only the matching dual-run sign is held to the envelope
            if (r.phase_sign == PhaseSign::plus && r.residual > env) any_breach = true;
        } else if (r.phase_sign == PhaseSign::plus &&
                   r.normalized_residual > calib::kTheoremNormBound) {
            any_breach = true;
        }
    }
    if (any_failed) return kExitNonconvergence;
    if (any_breach) return kExitBoundViolation;
    return kExitOk;
}

int cmd_stieltjes(std::int64_t q, std::int64_t chi_idx, int n_max,
                  std::int64_t series_limit) {
    const auto chi = make_character(q, chi_idx);
    if (chi.is_principal())
        throw domain_error("stieltjes requires a nonprincipal character");
    StieltjesOptions opt;
    if (series_limit > 0) opt.series_limit = series_limit;
    const auto c = stieltjes(chi, n_max, opt);
    nlohmann::json j;
    j["q"] = q;
    j["index"] = chi_idx;
    j["method_gap"] = c.method_gap;
    j["values"] = nlohmann::json::array();
    j["values_alt"] = nlohmann::json::array();
    for (const auto& v : c.values) j["values"].push_back(complex_json(v));
    for (const auto& v : c.values_alt) j["values_alt"].push_back(complex_json(v));
    std::cout << j.dump(1) << "\n";
    return kExitOk;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
    return parse_complex_impl(text);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size())
            throw domain_error("bad grid entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw domain_error("empty T grid");
    return out;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Dirichlet L-function a-point toolkit"};
    app.require_subcommand(1);

    std::int64_t q = 4, chi_idx = 1;
    std::string s_text = "2+0i", a_text = "0", method = "reference";
    int deriv = 0;
    double t_max = 50.0, X = 1.0;
    std::string grid_text = "50,100";
    std::string mode_text = "lemma-zero", sign_text = "plus", format = "csv";
    std::string out_path, plot_path = "residuals.dat", cache_flag;
    bool no_timestamp = false, include_left = false;
    std::int64_t sieve_limit = 1'000'000, series_limit = 0;
    int n_max = 1;

    auto* eval = app.add_subcommand("eval", "evaluate L or L' at a point");
    eval->add_option("--q", q, "modulus");
    eval->add_option("--chi", chi_idx, "character index");
    eval->add_option("--s", s_text, "evaluation point, e.g. \"0.5+30i\"");
    eval->add_option("--deriv", deriv, "0 = L, 1 = L'")->check(CLI::Range(0, 1));
    eval->add_option("--method", method, "reference | rane | lprime-afe");

    auto* scan = app.add_subcommand("scan", "locate and count a-points up to a height");
    scan->add_option("--q", q, "modulus");
    scan->add_option("--chi", chi_idx, "character index");
    scan->add_option("--a", a_text, "target value a");
    scan->add_option("--t-max", t_max, "scan height")->required();
    scan->add_option("--cache-dir", cache_flag, "a-point cache directory");
    scan->add_flag("--include-left", include_left, "keep points with beta <= 0");

    auto* verify = app.add_subcommand("verify", "empirical sum vs asymptotic formula");
    verify->add_option("--q", q, "modulus");
    verify->add_option("--chi", chi_idx, "character index");
    verify->add_option("--a", a_text, "target value a");
    verify->add_option("--X", X, "the X parameter");
    verify->add_option("--t-grid", grid_text, "comma-separated T values")->required();
    verify->add_option("--mode", mode_text, "lemma-zero | theorem1 | corollary");
    verify->add_option("--phase-sign", sign_text, "plus | minus | both");
    verify->add_option("--format", format, "csv | json");
    verify->add_option("--out", out_path, "table output path (default stdout)");
    verify->add_option("--plot", plot_path, "two-column (T, normalized residual) file");
    verify->add_option("--cache-dir", cache_flag, "a-point cache directory");
    verify->add_option("--sieve-limit", sieve_limit, "factor sieve limit");
    verify->add_flag("--no-timestamp", no_timestamp, "suppress the timestamp header");
    verify->add_flag("--include-left", include_left, "sum over beta <= 0 points too");

    auto* stj = app.add_subcommand("stieltjes", "generalized Stieltjes coefficients");
    stj->add_option("--q", q, "modulus");
    stj->add_option("--chi", chi_idx, "character index");
    stj->add_option("--n-max", n_max, "highest coefficient")->check(CLI::Range(0, 4));
    stj->add_option("--series-limit", series_limit, "prime cutoff of the series route");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(q, chi_idx, s_text, deriv, method);
        if (scan->parsed())
            return cmd_scan(q, chi_idx, a_text, t_max, cache_flag, include_left);
        if (verify->parsed())
            return cmd_verify(q, chi_idx, a_text, X, grid_text, mode_text, sign_text,
                              format, out_path, plot_path, cache_flag, no_timestamp,
                              include_left, sieve_limit);
        if (stj->parsed()) return cmd_stieltjes(q, chi_idx, n_max, series_limit);
        return kExitUsage;
    } catch (const pole_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathDomain;
    } catch (const near_singularity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathDomain;
    } catch (const math_domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathDomain;
    } catch (const bound_violation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBoundViolation;
    } catch (const nonconvergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonconvergence;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace lfa::cli
