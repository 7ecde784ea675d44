#include "specdecay/cliapp.hpp"

#include "specdecay/geometry.hpp"
#include "specdecay/subordination.hpp"
#include "specdecay/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specdecay {

namespace {

using ordered_json = nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << content;
}

bool certified_row(const SingularSpectrum& sp, std::size_t k) {
    return sp.values[k] > 10.0 * sp.error_bounds[k];
}

struct CommonOpts {
    unsigned bits = 256;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    std::string mode = "auto";

    PrecisionContext ctx() const { return PrecisionContext(bits, seed); }
    SvdOptions svd() const {
        SvdOptions o;
        if (mode == "serial") o.mode = ExecMode::Serial;
        else if (mode == "parallel") o.mode = ExecMode::Parallel;
        else o.mode = ExecMode::Auto;
        return o;
    }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--bits", c.bits, "binary working precision (>= 64)");
    cmd->add_option("--seed", c.seed, "seed for stochastic routines");
    cmd->add_option("--out", c.out, "output file path");
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--mode", c.mode, "svd sweep mode")->check(CLI::IsMember({"auto", "serial", "parallel"}));
}

void emit_spectrum(const CommonOpts& c, const SingularSpectrum& sp,
                   std::vector<std::pair<std::string, std::string>> meta, double wall) {
    int digits = c.ctx().out_digits();
    std::string body =
        c.format == "json" ? spectrum_json(sp, digits, meta) : spectrum_csv(sp, digits);
    if (!c.out.empty()) {
        write_file(c.out, body);
        std::size_t certified = 0;
        while (certified < sp.size() && certified_row(sp, certified)) ++certified;
        std::cout << "wrote " << sp.size() << " singular values to " << c.out << " (certified prefix "
                  << certified << ", " << wall << " s)\n";
    } else {
        std::cout << body;
        std::cerr << "# wall-clock " << wall << " s\n";
    }
}

}  // namespace

Cplx parse_complex(const std::string& text, mpfr_prec_t prec) {
    // forms: "a", "bi", "a+bi", "a-bi" (decimal literals)
    std::string s = text;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    double re = 0.0, im = 0.0;
    auto is_im = s.back() == 'i' || s.back() == 'I';
    if (!is_im) {
        re = std::stod(s);
        return Cplx(re, 0.0, prec);
    }
    s.pop_back();
    // find the split sign (not at position 0, not right after e/E)
    std::size_t split_pos = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split_pos = i;
    }
    if (split_pos == std::string::npos) {
        im = s.empty() || s == "+" ? 1.0 : (s == "-" ? -1.0 : std::stod(s));
        return Cplx(0.0, im, prec);
    }
    re = std::stod(s.substr(0, split_pos));
    std::string imtxt = s.substr(split_pos);
    im = imtxt == "+" ? 1.0 : (imtxt == "-" ? -1.0 : std::stod(imtxt));
    return Cplx(re, im, prec);
}

Symbol parse_symbol(const std::string& spec, const PrecisionContext& ctx) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "cusp") return cusp(ctx);
    if (head == "lens") return lens(std::stod(args), ctx);
    if (head == "auto") return automorphism(parse_complex(args, ctx.prec()), ctx);
    if (head == "halfplane-auto") return half_plane_auto(ctx);
    if (head == "scale") return scale_map(std::stod(args), ctx);
    if (head == "monomial") return monomial_map(std::stol(args), ctx);
    if (head == "st-log") {
        ShapiroTaylorParams p;
        p.variant = ShapiroTaylorVariant::LogLog;
        p.eps = std::stod(args);
        return shapiro_taylor(p, ctx);
    }
    if (head == "st-pow") {
        auto parts = split(args, ',');
        if (parts.size() != 3) throw std::invalid_argument("st-pow:P,S,EPS expected");
        ShapiroTaylorParams p;
        p.variant = ShapiroTaylorVariant::Power;
        p.p = std::stod(parts[0]);
        p.s = std::stod(parts[1]);
        p.eps = std::stod(parts[2]);
        return shapiro_taylor(p, ctx);
    }
    if (head == "blaschke") {
        std::vector<Cplx> zeros;
        for (const auto& t : split(args, ',')) zeros.push_back(parse_complex(t, ctx.prec()));
        return blaschke(zeros, ctx);
    }
    throw std::invalid_argument("unknown symbol spec: " + spec);
}

WeightFamily parse_family(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "hardy") return WeightFamily::hardy();
    if (head == "bergman") return WeightFamily::bergman(std::stod(args));
    if (head == "dirichlet") return WeightFamily::dirichlet(std::stod(args));
    if (head == "expsqrt")
        return WeightFamily::custom("expsqrt",
                                    [](long k, mpfr_prec_t p) { return exp(-sqrt(Real(k, p))); });
    throw std::invalid_argument("unknown space spec: " + spec);
}

std::string spectrum_csv(const SingularSpectrum& sp, int digits) {
    std::ostringstream os;
    os << "n,a_n,err_bound,certified\n";
    for (std::size_t k = 0; k < sp.size(); ++k)
        os << (k + 1) << ',' << sp.values[k].str(digits) << ',' << sp.error_bounds[k].str(6) << ','
           << (certified_row(sp, k) ? 1 : 0) << '\n';
    return os.str();
}

std::string spectrum_json(const SingularSpectrum& sp, int digits,
                          const std::vector<std::pair<std::string, std::string>>& meta) {
    ordered_json j;
    j["meta"] = ordered_json::object();
    for (const auto& kv : meta) j["meta"][kv.first] = kv.second;
    j["meta"]["version"] = kVersion;
    j["rows"] = ordered_json::array();
    for (std::size_t k = 0; k < sp.size(); ++k) {
        ordered_json row;
        row["n"] = k + 1;
        row["a_n"] = sp.values[k].str(digits);
        row["err_bound"] = sp.error_bounds[k].str(6);
        row["certified"] = certified_row(sp, k);
        j["rows"].push_back(row);
    }
    return j.dump(1) + "\n";
}

namespace {

int cmd_spectrum(const CommonOpts& c, const std::string& symbol_spec, const std::string& space_spec,
                 std::size_t n, bool do_normalize, bool with_tail) {
    auto t0 = clock_type::now();
    PrecisionContext ctx = c.ctx();
    Symbol s = parse_symbol(symbol_spec, ctx);
    if (do_normalize) s = normalize(s, ctx);
    WeightFamily fam = parse_family(space_spec);
    TruncatedOperator op = build_matrix(s, fam, n, ctx);
    SingularSpectrum sp = approx_numbers(op, ctx, c.svd());
    std::vector<std::pair<std::string, std::string>> meta{{"symbol", s.name},
                                                          {"space", fam.name()},
                                                          {"n", std::to_string(n)},
                                                          {"bits", std::to_string(c.bits)},
                                                          {"seed", std::to_string(c.seed)}};
    if (with_tail) {
        TailCertificate tc = hs_tail(s, fam, n, 2 * n, ctx);
        meta.emplace_back("hs_tail_heuristic", tc.hs_tail.str(6));
        std::cout << "# hs tail (heuristic): " << tc.hs_tail.str(6) << "  [" << tc.method << "]\n";
    }
    emit_spectrum(c, sp, std::move(meta), seconds_since(t0));
    return 0;
}

int cmd_compare(const CommonOpts& c, const std::string& symbol_spec, const std::string& spaces_arg,
                std::size_t n, bool hyperplane) {
    auto t0 = clock_type::now();
    PrecisionContext ctx = c.ctx();
    Symbol s = parse_symbol(symbol_spec, ctx);
    std::vector<WeightFamily> fams;
    for (const auto& t : split(spaces_arg, ',')) fams.push_back(parse_family(t));
    ChainResult chain = product_chain_check(s, fams, n, ctx, !hyperplane, c.svd());
    bool ok = true;
    for (std::size_t i = 0; i + 1 < fams.size(); ++i) {
        const auto& rep = chain.pairs[i];
        std::cout << fams[i + 1].name() << " log-subordinate to " << fams[i].name() << ": "
                  << (rep.holds ? "holds" : "FAILS") << " on certified prefix "
                  << rep.certified_prefix;
        if (rep.first_violation) std::cout << " (first violation at n=" << *rep.first_violation << ")";
        std::cout << "\n";
        ok = ok && rep.holds;
    }
    std::cout << (ok ? "chain holds on certified prefix" : "chain FAILED") << "  ("
              << seconds_since(t0) << " s)\n";
    return ok ? 0 : 3;
}

int cmd_decay(const CommonOpts& c, const std::string& symbol_spec, const std::string& space_spec,
              std::size_t n, std::size_t fit_min, std::size_t fit_max) {
    auto t0 = clock_type::now();
    PrecisionContext ctx = c.ctx();
    Symbol s = parse_symbol(symbol_spec, ctx);
    WeightFamily fam = parse_family(space_spec);
    SingularSpectrum sp = approx_numbers(build_matrix(s, fam, n, ctx), ctx, c.svd());
    std::size_t cert = 0;
    while (cert < sp.size() && certified_row(sp, cert)) ++cert;
    if (fit_max == 0 || fit_max > cert) fit_max = cert;
    auto fits = model_compare(sp.values, fit_min, fit_max);
    std::cout << "fit range n in [" << fit_min << "," << fit_max << "] (certified prefix " << cert
              << ")\n";
    for (const auto& f : fits)
        std::cout << model_name(f.model) << ": rate=" << f.rate << " offset=" << f.offset
                  << " rms_log_residual=" << f.rms_residual << "\n";
    std::cout << "best: " << model_name(fits[0].model) << "  (" << seconds_since(t0) << " s)\n";
    if (!c.out.empty()) {
        std::ostringstream os;
        os << "model,rate,offset,rms_log_residual,n_min,n_max\n";
        for (const auto& f : fits)
            os << model_name(f.model) << ',' << f.rate << ',' << f.offset << ',' << f.rms_residual
               << ',' << f.n_min << ',' << f.n_max << "\n";
        write_file(c.out, os.str());
    }
    return 0;
}

int cmd_carleson(const CommonOpts& c, const std::string& symbol_spec, const std::string& h_grid,
                 int xi_count, int grid_k) {
    auto t0 = clock_type::now();
    PrecisionContext ctx = c.ctx();
    Symbol s = parse_symbol(symbol_spec, ctx);
    PullbackSampler sampler(s, {grid_k}, ctx);
    std::ostringstream os;
    os << "h,rho2,rho2_over_h2\n";
    for (const auto& ht : split(h_grid, ',')) {
        double h = std::stod(ht);
        Real r = rho2(s, h, xi_count, sampler, ctx);
        os << h << ',' << r.str(12) << ',' << (r / (h * h)).str(12) << "\n";
    }
    std::cout << os.str() << "# grid 2^" << grid_k << " x 2^" << grid_k << " (heuristic sampler), "
              << seconds_since(t0) << " s\n";
    if (!c.out.empty()) write_file(c.out, os.str());
    return 0;
}

int cmd_schatten(const CommonOpts& c, const std::string& symbol_spec, double gamma, double p,
                 int depth, int grid_k) {
    auto t0 = clock_type::now();
    PrecisionContext ctx = c.ctx();
    Symbol s = parse_symbol(symbol_spec, ctx);
    auto levels = luecking_sum(s, gamma, p, depth, {grid_k}, ctx);
    std::ostringstream os;
    os << "level,sum\n";
    for (std::size_t i = 0; i < levels.size(); ++i) os << (i + 1) << ',' << levels[i].str(12) << "\n";
    std::cout << os.str() << "# heuristic sampler, " << seconds_since(t0) << " s\n";
    if (!c.out.empty()) write_file(c.out, os.str());
    return 0;
}

int cmd_kernels(const CommonOpts& c, double alpha, const std::string& points,
                const std::string& space_spec) {
    PrecisionContext ctx = c.ctx();
    Real tol = Real::two_pow(-static_cast<long>(ctx.bits) + 32, kBoundPrec);
    std::ostringstream os;
    os << "a,z,closed_form_re,closed_form_im,series_re,series_im,abs_diff\n";
    int digits = ctx.out_digits();
    bool all_close = true;
    for (const auto& pair_txt : split(points, ';')) {
        auto parts = split(pair_txt, ',');
        if (parts.size() != 2) throw std::invalid_argument("points: expected 'a,z;a,z;...'");
        Cplx a = parse_complex(parts[0], ctx.prec());
        Cplx z = parse_complex(parts[1], ctx.prec());
        Cplx cf = kernel_closed_form(a, z, alpha, ctx);
        Cplx sr = kernel_series(a, z, alpha, tol, ctx);
        Real diff = abs(cf - sr);
        all_close = all_close && diff < tol * 100.0 + Real(1e-30, ctx.prec());
        os << parts[0] << ',' << parts[1] << ',' << cf.re.str(digits) << ',' << cf.im.str(digits)
           << ',' << sr.re.str(digits) << ',' << sr.im.str(digits) << ',' << diff.str(6) << "\n";
        if (!space_spec.empty()) {
            WeightFamily fam = parse_family(space_spec);
            auto kn = kernel_norm_sq(a, fam, tol, ctx);
            os << "# ||K_a||^2 on " << fam.name() << " = " << kn.value.str(digits)
               << " (tail bound " << kn.tail_bound.str(4) << ", certified)\n";
        }
    }
    std::cout << os.str();
    if (!c.out.empty()) write_file(c.out, os.str());
    return all_close ? 0 : 3;
}

int cmd_taylor(const CommonOpts& c, const std::string& symbol_spec, std::size_t n) {
    PrecisionContext ctx = c.ctx();
    Symbol s = parse_symbol(symbol_spec, ctx);
    PowerSeries ps = taylor(s, n, ctx);
    int digits = ctx.out_digits();
    std::ostringstream os;
    os << "k,re,im,coeff_error\n";
    for (std::size_t k = 0; k <= n; ++k)
        os << k << ',' << ps.coeffs[k].re.str(digits) << ',' << ps.coeffs[k].im.str(digits) << ','
           << ps.coeff_error.str(6) << "\n";
    std::cout << os.str();
    if (!c.out.empty()) write_file(c.out, os.str());
    return 0;
}

int cmd_two_routes(const CommonOpts& c, const std::string& symbol_spec, double alpha, std::size_t n) {
    auto t0 = clock_type::now();
    PrecisionContext ctx = c.ctx();
    Symbol s = parse_symbol(symbol_spec, ctx);
    TwoRouteSpectra tr = dirichlet_spectrum_two_routes(s, alpha, n, ctx, c.svd());
    int digits = ctx.out_digits();
    std::size_t top = std::min<std::size_t>(20, tr.dirichlet_route.size());
    bool ok = true;
    std::ostringstream os;
    os << "n,dirichlet_route,weighted_bergman_route,rel_dev\n";
    for (std::size_t k = 0; k < top; ++k) {
        Real d = abs(tr.dirichlet_route.values[k] - tr.weighted_bergman_route.values[k]);
        Real rel = d / tr.dirichlet_route.values[k];
        Real budget = tr.dirichlet_route.error_bounds[k] + tr.weighted_bergman_route.error_bounds[k] +
                      tr.combined_entry_certificate;
        ok = ok && d <= budget;
        os << (k + 1) << ',' << tr.dirichlet_route.values[k].str(digits) << ','
           << tr.weighted_bergman_route.values[k].str(digits) << ',' << rel.str(4) << "\n";
    }
    std::cout << os.str() << (ok ? "routes agree within combined certificates"
                                 : "routes DISAGREE beyond certificates")
              << "  (" << seconds_since(t0) << " s)\n";
    if (!c.out.empty()) write_file(c.out, os.str());
    return ok ? 0 : 3;
}

int cmd_verify(const CommonOpts& c, const std::string& suite) {
    auto t0 = clock_type::now();
    PrecisionContext ctx = c.ctx();
    auto results = verify_suite(suite, ctx);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.pass) std::cout << "  [" << r.detail << "]";
        std::cout << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "all checks passed" : "CHECKS FAILED") << " (" << results.size()
              << " checks, " << seconds_since(t0) << " s)\n";
    return all ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
#ifdef _OPENMP
    if (const char* cap = std::getenv("SPECDECAY_THREADS")) {
        int n = std::atoi(cap);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
    CLI::App app{"composition-operator spectra on weighted Hilbert spaces"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.set_config("--config");

    CommonOpts c;
    std::string symbol_spec, space_spec = "hardy", spaces_arg, h_grid = "0.1,0.05,0.025", points;
    std::string kernel_space, models = "all";
    std::size_t n = 64, fit_min = 8, fit_max = 0;
    double alpha = 1.0, gamma = 0.0, p = 2.0;
    int depth = 6, xi_count = 16, grid_k = 9;
    bool do_normalize = false, with_tail = false, hyperplane = false;
    std::string suite = "all";

    auto* sp = app.add_subcommand("spectrum", "singular values of the truncated operator");
    add_common(sp, c);
    sp->add_option("--symbol", symbol_spec)->required();
    sp->add_option("--space", space_spec);
    sp->add_option("--n", n);
    sp->add_flag("--normalize", do_normalize, "precompose with the origin-fixing automorphism");
    sp->add_flag("--tail", with_tail, "also report the Hilbert-Schmidt tail (heuristic)");

    auto* cp = app.add_subcommand("compare", "log-subordination chain across spaces");
    add_common(cp, c);
    cp->add_option("--symbol", symbol_spec)->required();
    cp->add_option("--spaces", spaces_arg)->required();
    cp->add_option("--n", n);
    cp->add_flag("--hyperplane", hyperplane, "compare on the f(0)=0 hyperplane");

    auto* dc = app.add_subcommand("decay", "fit decay models to the spectrum");
    add_common(dc, c);
    dc->add_option("--symbol", symbol_spec)->required();
    dc->add_option("--space", space_spec);
    dc->add_option("--n", n);
    dc->add_option("--models", models, "model selector (all models are always fitted)");
    dc->add_option("--fit-min", fit_min);
    dc->add_option("--fit-max", fit_max);

    auto* cl = app.add_subcommand("carleson", "2-Carleson function over an h grid");
    add_common(cl, c);
    cl->add_option("--symbol", symbol_spec)->required();
    cl->add_option("--h-grid", h_grid);
    cl->add_option("--xi-count", xi_count);
    cl->add_option("--grid-k", grid_k);

    auto* sc = app.add_subcommand("schatten", "Luecking level sums");
    add_common(sc, c);
    sc->add_option("--symbol", symbol_spec)->required();
    sc->add_option("--gamma", gamma);
    sc->add_option("--p", p);
    sc->add_option("--depth", depth);
    sc->add_option("--grid-k", grid_k);

    auto* kn = app.add_subcommand("kernels", "closed-form kernels against the weight series");
    add_common(kn, c);
    kn->add_option("--alpha", alpha);
    kn->add_option("--points", points)->required();
    kn->add_option("--space", kernel_space);

    auto* ty = app.add_subcommand("taylor", "Taylor coefficients with certificates");
    add_common(ty, c);
    ty->add_option("--symbol", symbol_spec)->required();
    ty->add_option("--n", n);

    auto* tr = app.add_subcommand("two-routes", "Dirichlet spectrum via both unitary pictures");
    add_common(tr, c);
    tr->add_option("--symbol", symbol_spec)->required();
    tr->add_option("--alpha", alpha);
    tr->add_option("--n", n);

    auto* vf = app.add_subcommand("verify", "run module invariant suites");
    add_common(vf, c);
    vf->add_option("--suite", suite,
                   "all|numerics|series|spaces|symbols|operators|subordination|geometry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(c, symbol_spec, space_spec, n, do_normalize, with_tail);
        if (cp->parsed()) return cmd_compare(c, symbol_spec, spaces_arg, n, hyperplane);
        if (dc->parsed()) return cmd_decay(c, symbol_spec, space_spec, n, fit_min, fit_max);
        if (cl->parsed()) return cmd_carleson(c, symbol_spec, h_grid, xi_count, grid_k);
        if (sc->parsed()) return cmd_schatten(c, symbol_spec, gamma, p, depth, grid_k);
        if (kn->parsed()) return cmd_kernels(c, alpha, points, kernel_space);
        if (ty->parsed()) return cmd_taylor(c, symbol_spec, n);
        if (tr->parsed()) return cmd_two_routes(c, symbol_spec, alpha, n);
        if (vf->parsed()) return cmd_verify(c, suite == "all" || suite.empty() ? "all" : suite);
    } catch (const SvdNonConvergence& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const CertificateError& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace specdecay
