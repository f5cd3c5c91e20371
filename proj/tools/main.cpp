#include <cstdlib>
#include <cxxabi.h>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "anticyclo/json_io.hpp"

using namespace anticyclo;

namespace {

long default_precision() {
    if (const char* env = std::getenv("ANTICYCLO_PRECISION")) {
        long v = std::atol(env);
        if (v >= 1) return v;
    }
    return kDefaultPrecision;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

// "a" or "a/b" as a p-adic number
Padic parse_rational(const std::string& s, long p, long prec) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Padic::from_integer(p, Int(s), prec);
    return Padic::from_rational(p, Int(s.substr(0, slash)), Int(s.substr(slash + 1)), prec);
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(Int(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    return out;
}

std::string error_name(const Error& e) {
    int status = 0;
    char* demangled = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
    std::string name = (status == 0 && demangled) ? demangled : typeid(e).name();
    std::free(demangled);
    auto pos = name.rfind("::");
    if (pos != std::string::npos) name = name.substr(pos + 2);
    return name;
}

void emit(const std::string& command, const Json& config, const Json& result) {
    Json report;
    report["schema"] = kSchemaVersion;
    report["command"] = command;
    report["config"] = config;
    report["result"] = result;
    std::cout << report.dump(2) << "\n";
}

Json ord_to_json(const std::optional<long>& o) {
    if (!o) return Json("infinity");
    return Json(*o);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"anticyclotomic p-adic BSD toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // allow --prec/--seed after the subcommand name

    long prec = default_precision();
    app.add_option("--prec", prec, "working p-adic precision")->capture_default_str();
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "seed for randomized subcommands")->capture_default_str();

    // ap-count
    auto* ap_count = app.add_subcommand("ap-count", "point count and a_q over F_q");
    std::string curve_path;
    long q_arg = 0;
    ap_count->add_option("--curve", curve_path, "curve JSON file")->required();
    ap_count->add_option("--q", q_arg, "prime q")->required();

    // unit-root
    auto* uroot = app.add_subcommand("unit-root", "unit root of X^2 - a_p X + p");
    long p_arg = 0, ap_arg = 0;
    uroot->add_option("--p", p_arg, "odd prime")->required();
    uroot->add_option("--ap", ap_arg, "trace of Frobenius")->required();

    // formal-log
    auto* flog = app.add_subcommand("formal-log", "formal group logarithm of a local point");
    std::string x_str, y_str;
    long flog_p = 0;
    flog->add_option("--curve", curve_path, "curve JSON file")->required();
    flog->add_option("--p", flog_p, "odd prime of good ordinary reduction")->required();
    flog->add_option("--x", x_str, "x coordinate, integer or a/b")->required();
    flog->add_option("--y", y_str, "y coordinate, integer or a/b")->required();

    // ordj
    auto* ordj = app.add_subcommand("ordj", "augmentation-ideal order of a group ring element");
    long gr_p = 0, gr_n = 0;
    std::string coeffs_str;
    ordj->add_option("--p", gr_p, "prime")->required();
    ordj->add_option("--n", gr_n, "level")->required();
    ordj->add_option("--coeffs", coeffs_str, "comma-separated coefficients in the T basis")
        ->required();

    // derivop
    auto* derivop = app.add_subcommand("derivop", "derivative operator D^(k) in R_n");
    long k_arg = 0;
    derivop->add_option("--p", gr_p, "prime")->required();
    derivop->add_option("--n", gr_n, "level")->required();
    derivop->add_option("--k", k_arg, "order, 0 <= k <= p")->required();

    // filtration
    auto* filt = app.add_subcommand("filtration", "null-space filtration of a height system");
    std::string input_path;
    filt->add_option("--input", input_path, "height system JSON file")->required();

    // regulator
    auto* regcmd = app.add_subcommand("regulator", "enhanced / derived / square-root regulator");
    std::string kind = "derived";
    std::string log_str = "0";
    regcmd->add_option("--input", input_path, "height system JSON file")->required();
    regcmd->add_option("--kind", kind, "enhanced | derived | sqrt | p-derived")
        ->check(CLI::IsMember({"enhanced", "derived", "sqrt", "p-derived"}))
        ->capture_default_str();
    regcmd->add_option("--log", log_str, "logarithm value for p-derived, integer or a/b")
        ->capture_default_str();

    // heegner-check
    auto* hcheck = app.add_subcommand("heegner-check", "generate and regularize a point system");
    long nmax = 2;
    hcheck->add_option("--p", p_arg, "odd prime")->required();
    hcheck->add_option("--ap", ap_arg, "trace, not 0 or 1 mod p")->required();
    hcheck->add_option("--nmax", nmax, "top level of the tower")->capture_default_str();

    // theta-ordj
    auto* tordj = app.add_subcommand("theta-ordj", "ord_J of the point distribution");
    long level = -1;
    tordj->add_option("--p", p_arg, "odd prime")->required();
    tordj->add_option("--ap", ap_arg, "trace, not 0 or 1 mod p")->required();
    tordj->add_option("--nmax", nmax, "top level of the tower")->capture_default_str();
    tordj->add_option("--level", level, "level of the distribution, default nmax");

    // admissible-search
    auto* adm = app.add_subcommand("admissible-search", "m-admissible primes with certificates");
    std::string dk_str;
    long m_arg = 1, bound = 100;
    adm->add_option("--curve", curve_path, "curve JSON file")->required();
    adm->add_option("--dk", dk_str, "fundamental discriminant of K")->required();
    adm->add_option("--p", p_arg, "odd prime")->required();
    adm->add_option("--m", m_arg, "divisibility exponent")->capture_default_str();
    adm->add_option("--bound", bound, "search bound")->capture_default_str();

    // bsd-eval
    auto* beval = app.add_subcommand("bsd-eval", "conjecture predictions and series comparison");
    std::string series_path, theta_path;
    beval->add_option("--input", input_path, "BSD input JSON file")->required();
    beval->add_option("--series", series_path, "series JSON file to compare");
    beval->add_option("--theta", theta_path, "distribution JSON file, order reported");

    // pf
    auto* pfcmd = app.add_subcommand("pf", "Pfaffian of an alternating matrix");
    pfcmd->add_option("--input", input_path, "p-adic matrix JSON file")->required();

    // snf
    auto* snfcmd = app.add_subcommand("snf", "Smith normal form over Z_p");
    snfcmd->add_option("--input", input_path, "p-adic matrix JSON file")->required();

    // fitting
    auto* fitcmd = app.add_subcommand("fitting", "Fitting ideal generator of a presentation");
    fitcmd->add_option("--input", input_path, "group ring matrix JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage and validation errors
    }

    try {
        if (*ap_count) {
            CurveData E = curve_from_json(load_json(curve_path));
            PointCount pc = count_points(E, q_arg);
            emit("ap-count", {{"curve", curve_path}, {"q", q_arg}},
                 {{"count", pc.count}, {"a_q", pc.a_q}});
        } else if (*uroot) {
            Padic alpha = unit_root(ap_arg, p_arg, prec);
            emit("unit-root", {{"p", p_arg}, {"ap", ap_arg}, {"prec", prec}},
                 {{"alpha", padic_digits(alpha)}, {"residue", alpha.residue(prec).str()}});
        } else if (*flog) {
            CurveData E = curve_from_json(load_json(curve_path));
            LocalPoint P = LocalPoint::affine(parse_rational(x_str, flog_p, prec + 10),
                                              parse_rational(y_str, flog_p, prec + 10));
            Padic lg = formal_log(E, flog_p, P, prec);
            emit("formal-log",
                 {{"curve", curve_path}, {"p", flog_p}, {"x", x_str}, {"y", y_str}, {"prec", prec}},
                 {{"log", padic_digits(lg)}});
        } else if (*ordj) {
            GroupRingElement f(gr_p, gr_n, parse_int_list(coeffs_str));
            emit("ordj", {{"p", gr_p}, {"n", gr_n}, {"coeffs", coeffs_str}},
                 {{"ord_j", ord_to_json(ord_J(f))}});
        } else if (*derivop) {
            emit("derivop", {{"p", gr_p}, {"n", gr_n}, {"k", k_arg}},
                 {{"element", to_json(derivative_operator(gr_p, gr_n, k_arg))}});
        } else if (*filt) {
            HeightSystem sys = height_system_from_json(load_json(input_path));
            FiltrationReport rep = compute_filtration(sys.H, sys.rank());
            Json regs = Json::array();
            for (const auto& r : rep.partial_regs) regs.push_back(padic_digits(r));
            emit("filtration", {{"input", input_path}},
                 {{"e", rep.e},
                  {"residual_rank", rep.residual_rank},
                  {"varrho", rep.varrho},
                  {"partial_regs", regs}});
        } else if (*regcmd) {
            HeightSystem sys = height_system_from_json(load_json(input_path));
            Json result;
            if (kind == "enhanced") {
                if (sys.H.empty()) throw BadInput("height system has no pairings");
                EnhancedRegulator er = enhanced_regulator(sys.H[0], sys.t_prime);
                result = {{"exponent", er.exponent}, {"coeff", to_json(er.coeff)}};
            } else if (kind == "derived") {
                GradedValue gv = derived_enhanced_regulator(sys);
                result = {{"exponent", gv.exponent}, {"coeff", padic_digits(gv.coeff)}};
            } else if (kind == "sqrt") {
                SqrtRegulator sr = sqrt_regulator(sys);
                result = {{"exponent", sr.value.exponent},
                          {"coeff", padic_digits(sr.value.coeff)},
                          {"sign_ambiguous", sr.sign_ambiguous},
                          {"block_sign", sr.block_sign}};
            } else {
                Padic lg = parse_rational(log_str, sys.t.prime(), sys.t.precision());
                GradedValue gv = derived_regulator_p(sys, lg, sys.t);
                result = {{"exponent", gv.exponent}, {"coeff", padic_digits(gv.coeff)}};
            }
            emit("regulator", {{"input", input_path}, {"kind", kind}, {"log", log_str}}, result);
        } else if (*hcheck) {
            HeegnerSystem sys = generate_heegner_system(p_arg, ap_arg, nmax, prec, seed);
            Padic alpha = unit_root(ap_arg, p_arg, prec);
            auto z = regularize(sys, alpha);
            bool ok = true;
            for (long n = 0; n < nmax; ++n)
                ok = ok && vec_eq(norm_map(z[static_cast<std::size_t>(n) + 1], p_arg, n),
                                  z[static_cast<std::size_t>(n)]);
            emit("heegner-check",
                 {{"p", p_arg}, {"ap", ap_arg}, {"nmax", nmax}, {"prec", prec}, {"seed", seed}},
                 {{"norm_compatible", ok}, {"levels", nmax + 1}});
            return ok ? 0 : 1;
        } else if (*tordj) {
            if (level < 0) level = nmax;
            if (level > nmax) throw BadInput("level exceeds nmax");
            HeegnerSystem sys = generate_heegner_system(p_arg, ap_arg, nmax, prec, seed);
            Padic alpha = unit_root(ap_arg, p_arg, prec);
            auto z = regularize(sys, alpha);
            Distribution theta = psi_map(z[static_cast<std::size_t>(level)], p_arg, level);
            emit("theta-ordj",
                 {{"p", p_arg},
                  {"ap", ap_arg},
                  {"nmax", nmax},
                  {"level", level},
                  {"prec", prec},
                  {"seed", seed}},
                 {{"ord_j", ord_to_json(ord_J_distribution(theta))}});
        } else if (*adm) {
            CurveData E = curve_from_json(load_json(curve_path));
            auto found = admissible_search(E, Int(dk_str), p_arg, m_arg, bound);
            Json primes = Json::array();
            for (const auto& c : found)
                primes.push_back({{"q", c.q},
                                  {"a_q", c.a_q},
                                  {"kronecker", c.kronecker},
                                  {"q_mod_p", c.q_mod_p},
                                  {"minus_branch", c.minus_branch},
                                  {"plus_branch", c.plus_branch}});
            emit("admissible-search",
                 {{"curve", curve_path},
                  {"dk", dk_str},
                  {"p", p_arg},
                  {"m", m_arg},
                  {"bound", bound}},
                 {{"primes", primes},
                  {"injectivity_checked", false},
                  {"note", "set-level injectivity needs a restriction matrix"}});
        } else if (*beval) {
            BSDInput in = bsd_input_from_json(load_json(input_path));
            Json result;
            if (series_path.empty()) {
                GradedValue pred = predict_conjecture_BSD(in);
                result = {{"predicted_order", pred.exponent},
                          {"predicted_coeff", padic_digits(pred.coeff)}};
            } else {
                IwasawaSeries s = series_from_json(load_json(series_path));
                BSDReport rep;
                if (theta_path.empty()) {
                    rep = evaluate_series_against_prediction(s, in);
                } else {
                    Json tj = load_json(theta_path);
                    Distribution theta;
                    theta.p = tj.at("p").get<long>();
                    theta.n = tj.at("n").get<long>();
                    for (const auto& c : tj.at("coords"))
                        theta.coords.push_back(group_ring_from_json(c));
                    rep = evaluate_series_against_prediction(s, in, theta);
                }
                result = {{"predicted_order", rep.predicted_order},
                          {"predicted_coeff", padic_digits(rep.predicted_coeff)},
                          {"observed_order", ord_to_json(rep.observed_order)},
                          {"order_match", rep.order_match},
                          {"contradiction", rep.contradiction},
                          {"extra_vanishing", rep.extra_vanishing},
                          {"star_condition", rep.star_condition},
                          {"pass", rep.pass}};
                if (rep.observed_coeff) result["observed_coeff"] = padic_digits(*rep.observed_coeff);
                if (rep.valuation_match) result["valuation_match"] = *rep.valuation_match;
                if (rep.theta_order) result["theta_order"] = ord_to_json(rep.theta_order);
                if (rep.theta_consistent) result["theta_consistent"] = *rep.theta_consistent;
            }
            emit("bsd-eval",
                 {{"input", input_path}, {"series", series_path}, {"theta", theta_path}}, result);
        } else if (*pfcmd) {
            PadicMat m = padic_mat_from_json(load_json(input_path));
            emit("pf", {{"input", input_path}}, {{"pfaffian", padic_digits(pfaffian(m))}});
        } else if (*snfcmd) {
            PadicMat m = padic_mat_from_json(load_json(input_path));
            SmithForm sf = smith_form(m);
            emit("snf", {{"input", input_path}},
                 {{"diag_vals", sf.diag_vals}, {"rank", sf.rank}});
        } else if (*fitcmd) {
            GroupRingMat m = group_ring_mat_from_json(load_json(input_path));
            GroupRingElement gen = fitting_ideal(m);
            emit("fitting", {{"input", input_path}},
                 {{"generator", to_json(gen)}, {"ord_j", ord_to_json(ord_J(gen))}});
        }
    } catch (const Error& e) {
        Json diag = {{"schema", kSchemaVersion}, {"error", error_name(e)}, {"detail", e.what()}};
        std::cerr << diag.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json diag = {{"schema", kSchemaVersion}, {"error", "ValidationError"}, {"detail", e.what()}};
        std::cerr << diag.dump(2) << "\n";
        return 2;
    }
    return 0;
}
