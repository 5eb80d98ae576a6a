// Command-line front end. Every command prints deterministic JSON (JSON-lines
// for enumerations, CSV + JSON summary for scans); reruns with the same
// arguments are byte-identical, including across --workers settings.
//
// Exit codes: 0 success, 2 validation/domain errors, 3 cap or tolerance
// exhaustion.

#include <algorithm>
#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "betalab/measure_lab.hpp"
#include "betalab/param_cylinders.hpp"
#include "betalab/serialize.hpp"
#include "betalab/shift_cylinders.hpp"

namespace bl = betalab;
using bl::json;

namespace {

struct Split2 {
    std::string a, b;
};

Split2 split_pair(const std::string& s, const char* what) {
    size_t comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
        throw bl::parse_error(std::string(what) + ": expected 'lo,hi', got '" + s + "'");
    return {s.substr(0, comma), s.substr(comma + 1)};
}

// Inject config-file values as tokens right after the subcommand, so explicit
// command-line flags (parsed last, TakeLast policy) override them.
std::vector<std::string> with_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    for (size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.size() < 2) return args;
    std::ifstream in(path);
    if (!in) throw bl::parse_error("config: cannot open '" + path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        throw bl::parse_error("config: bad JSON in '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw bl::parse_error("config: top level must be an object");
    std::vector<std::string> injected;
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        std::string v;
        if (it.value().is_string()) v = it.value().get<std::string>();
        else v = it.value().dump();
        injected.push_back("--" + it.key() + "=" + v);
    }
    std::vector<std::string> out;
    out.push_back(args[0]);
    out.push_back(args[1]);  // subcommand first, then config, then explicit flags
    for (auto& t : injected) out.push_back(t);
    for (size_t i = 2; i < args.size(); ++i) out.push_back(args[i]);
    return out;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

// Shared scan output: CSV rows over the grid, then a one-line JSON summary
// keyed by a config fingerprint (workers intentionally excluded).
void emit_curve(const bl::HitCurve& curve, const std::string& config_key) {
    std::cout << "N,fraction,tail_block,discards\n";
    for (size_t i = 0; i < curve.grid.size(); ++i) {
        size_t k = std::bit_width(curve.grid[i]) - 1;
        json row = json::array({curve.grid[i], curve.fraction_by(i), curve.tail_fraction(k),
                                curve.discarded});
        std::string line = row.dump();
        std::cout << line.substr(1, line.size() - 2) << "\n";
    }
    json summary{{"seed", curve.seed},
                 {"config_hash", bl::hex64(bl::fnv1a64(config_key))},
                 {"curve", curve},
                 {"verdict", "ok"}};
    emit(summary);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bexlab: a numerical laboratory for greedy beta-expansions"};
    app.require_subcommand(1);

    std::string config_path;  // consumed during preprocessing; registered so parsing accepts it

    struct {
        std::string x = "0.5", beta = "1.5", w = "1", window = "1.5,2.5";
        std::string lambda = "0.02", target = "0", radius = "0.25", phi = "power:1,1";
        std::string targets = "0", l = "lin:1", a = "0", b = "0";
        size_t n = 4, n_lo = 1, n_hi = 6, depth = 0;
        std::uint64_t cap = 0, samples = 100, nmax = 1024, seed = 0;
        long long bits = 64, prec = 96, orbit_cap = bl::kDefaultOrbitCap;
        int workers = 1;
        bool summary_only = false;
    } o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON file of flag values (explicit flags win)");
        for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };

    auto* c_expand = app.add_subcommand("expand", "greedy digits and exact remainder of x at beta");
    c_expand->add_option("--x", o.x, "point in [0,1]")->capture_default_str();
    c_expand->add_option("--beta", o.beta, "base, > 1")->capture_default_str();
    c_expand->add_option("--n", o.n, "number of digits")->capture_default_str();
    c_expand->add_option("--bits", o.bits, "dyadic parse precision")->capture_default_str();

    auto* c_star = app.add_subcommand("star", "expansion of 1 and its infinite form");
    c_star->add_option("--beta", o.beta, "base, > 1")->capture_default_str();
    c_star->add_option("--n", o.n, "digit horizon")->capture_default_str();
    c_star->add_option("--bits", o.bits, "dyadic parse precision")->capture_default_str();

    auto* c_adm = app.add_subcommand("admissible", "is w a factor of the base-beta shift");
    c_adm->add_option("--w", o.w, "digit word, e.g. 1011 or [10,0,3]")->capture_default_str();
    c_adm->add_option("--beta", o.beta, "base, > 1")->capture_default_str();
    c_adm->add_option("--depth", o.depth, "comparison guard depth (0 = auto)")->capture_default_str();
    c_adm->add_option("--bits", o.bits, "dyadic parse precision")->capture_default_str();

    auto* c_sigma = app.add_subcommand("sigma", "enumerate order-n admissible words with cylinders");
    auto* c_xi = app.add_subcommand("xi", "enumerate order-n maximal-length cylinders");
    for (CLI::App* sub : {c_sigma, c_xi}) {
        sub->add_option("--beta", o.beta, "base, > 1")->capture_default_str();
        sub->add_option("--n", o.n, "word length")->capture_default_str();
        sub->add_option("--cap", o.cap, "enumeration cap (0 = default)")->capture_default_str();
        sub->add_option("--bits", o.bits, "dyadic parse precision")->capture_default_str();
        sub->add_flag("--summary-only", o.summary_only, "suppress per-cylinder lines");
    }

    auto* c_omega = app.add_subcommand("omega", "order-n parameter cylinders meeting a base window");
    auto* c_struct = app.add_subcommand("structural", "interval checks over a parameter window");
    for (CLI::App* sub : {c_omega, c_struct}) {
        sub->add_option("--x", o.x, "point in (0,1]")->capture_default_str();
        sub->add_option("--n", o.n, "word length")->capture_default_str();
        sub->add_option("--window", o.window, "base window lo,hi")->capture_default_str();
        sub->add_option("--cap", o.cap, "node cap (0 = default)")->capture_default_str();
        sub->add_option("--bits", o.bits, "tolerance bits")->capture_default_str();
        if (sub == c_omega) sub->add_flag("--summary-only", o.summary_only, "suppress per-cylinder lines");
    }

    auto* c_full = app.add_subcommand("full-check", "maximal-length test for one word");
    c_full->add_option("--w", o.w, "digit word")->capture_default_str();
    auto* f_x = c_full->add_option("--x", o.x, "parameter side: point in (0,1]");
    auto* f_beta = c_full->add_option("--beta", o.beta, "shift side: base > 1");
    c_full->add_option("--bits", o.bits, "tolerance bits")->capture_default_str();

    auto* c_prop = app.add_subcommand("proportion", "certified lower bound on the full proportion");
    c_prop->add_option("--beta", o.beta, "base, > 1")->capture_default_str();
    c_prop->add_option("--lambda", o.lambda, "target proportion in (0,1)")->capture_default_str();
    c_prop->add_option("--n-lo", o.n_lo, "first order")->capture_default_str();
    c_prop->add_option("--n-hi", o.n_hi, "last order")->capture_default_str();
    c_prop->add_option("--cap", o.cap, "enumeration cap (0 = default)")->capture_default_str();
    c_prop->add_option("--bits", o.bits, "dyadic parse precision")->capture_default_str();

    auto* c_slice = app.add_subcommand("slice", "parameter-side slice |f_w(beta) - target| < radius");
    c_slice->add_option("--w", o.w, "digit word")->capture_default_str();
    c_slice->add_option("--x", o.x, "point in (0,1]")->capture_default_str();
    c_slice->add_option("--target", o.target, "orbit target in [0,1]")->capture_default_str();
    c_slice->add_option("--radius", o.radius, "radius, > 0")->capture_default_str();
    c_slice->add_option("--bits", o.bits, "tolerance bits")->capture_default_str();

    auto* c_scan_e = app.add_subcommand("scan-e", "seeded base scan: hits |T^n x - x_n| < phi(n)");
    c_scan_e->add_option("--x", o.x, "orbit start in [0,1]")->capture_default_str();
    c_scan_e->add_option("--targets", o.targets, "periodic target list, e.g. 0.3 or 0.1,0.9")
        ->capture_default_str();
    c_scan_e->add_option("--window", o.window, "base window lo,hi (both > 1)")->capture_default_str();

    auto* c_scan_r = app.add_subcommand("scan-r", "seeded point scan: hits |T^n x - L(x)| < phi(n)");
    c_scan_r->add_option("--beta", o.beta, "base, > 1")->capture_default_str();
    c_scan_r->add_option("--a", o.a, "L(x) = a x + b, slope")->capture_default_str();
    c_scan_r->add_option("--b", o.b, "L(x) = a x + b, offset")->capture_default_str();

    for (CLI::App* sub : {c_scan_e, c_scan_r}) {
        sub->add_option("--phi", o.phi, "radius rate, e.g. power:1,2 geom:1,0.5 const:0.1")
            ->capture_default_str();
        sub->add_option("--samples", o.samples, "sample count")->capture_default_str();
        sub->add_option("--nmax", o.nmax, "orbit horizon")->capture_default_str();
        sub->add_option("--seed", o.seed, "PRF seed (required; no wall-clock default)")->required();
        sub->add_option("--workers", o.workers, "worker threads (output-invariant)")
            ->capture_default_str();
        sub->add_option("--orbit-cap", o.orbit_cap, "orbit precision cap in bits")
            ->capture_default_str();
        sub->add_option("--bits", o.bits, "dyadic parse precision")->capture_default_str();
    }

    auto* c_bstar = app.add_subcommand("beta-star", "convergence threshold of sum beta^(-l_n)");
    c_bstar->add_option("--l", o.l, "exponent rate: lin:a, log:b, loglin:a,b,c, logbase:d, const:c")
        ->capture_default_str();
    c_bstar->add_option("--prec", o.prec, "enclosure precision bits")->capture_default_str();

    auto* c_slice_r = app.add_subcommand("slice-r", "recurrence slice of a shift cylinder");
    c_slice_r->add_option("--w", o.w, "digit word")->capture_default_str();
    c_slice_r->add_option("--beta", o.beta, "base, > 1")->capture_default_str();
    c_slice_r->add_option("--a", o.a, "L(x) = a x + b, slope (exact rational)")->capture_default_str();
    c_slice_r->add_option("--b", o.b, "L(x) = a x + b, offset (exact rational)")->capture_default_str();
    c_slice_r->add_option("--phi", o.phi, "radius (exact rational, e.g. 0.1 or 1/10)")
        ->capture_default_str();
    c_slice_r->add_option("--bits", o.bits, "tolerance bits")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) add_common(sub);

    std::vector<std::string> tokens;
    try {
        tokens = with_config(argc, argv);
    } catch (const bl::error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    std::vector<char*> ptrs;
    ptrs.reserve(tokens.size());
    for (auto& t : tokens) ptrs.push_back(t.data());
    try {
        app.parse((int)ptrs.size(), ptrs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        bl::Tolerance tol;
        tol.bits = o.bits;
        long long pbits = std::max<long long>(o.bits, 64);

        if (app.got_subcommand(c_expand)) {
            auto r = bl::expand(bl::to_dyadic(o.x, pbits), bl::to_dyadic(o.beta, pbits), o.n);
            emit(json{{"digits", r.digits}, {"remainder", r.remainder}});
        } else if (app.got_subcommand(c_star)) {
            bl::Dyadic beta = bl::to_dyadic(o.beta, pbits);
            auto one = bl::one_expansion(beta, o.n);
            auto star = bl::star_expansion_of_one(beta, o.n);
            json j{{"digits", one.digits},
                   {"terminated", one.terminated},
                   {"star", star.to_string()}};
            if (one.terminated) j["last_nonzero"] = one.last_nonzero;
            emit(j);
        } else if (app.got_subcommand(c_adm)) {
            bl::Word w = bl::parse_word(o.w);
            bool ok = bl::is_admissible(w, bl::to_dyadic(o.beta, pbits), o.depth);
            emit(json{{"w", w}, {"admissible", ok}});
        } else if (app.got_subcommand(c_sigma) || app.got_subcommand(c_xi)) {
            bool xi_only = app.got_subcommand(c_xi);
            auto res = bl::enumerate_sigma(bl::to_dyadic(o.beta, pbits), o.n,
                                           o.cap ? o.cap : bl::kDefaultEnumerationCap);
            if (!o.summary_only)
                for (const auto& c : res.cylinders)
                    if (!xi_only || c.full) emit(json(c));
            emit(json{{"summary", res.report}});
        } else if (app.got_subcommand(c_omega)) {
            auto win = split_pair(o.window, "window");
            auto res = bl::enumerate_param_window(bl::to_dyadic(o.x, pbits), o.n,
                                                  bl::to_dyadic(win.a, pbits),
                                                  bl::to_dyadic(win.b, pbits), tol,
                                                  o.cap ? o.cap : bl::kDefaultParamCap);
            if (!o.summary_only)
                for (const auto& c : res.cylinders) emit(json(c));
            emit(json{{"summary",
                       json{{"count", res.cylinders.size()}, {"nodes", res.nodes_visited}}}});
        } else if (app.got_subcommand(c_struct)) {
            auto win = split_pair(o.window, "window");
            auto rep = bl::structural_checks(bl::to_dyadic(o.x, pbits), o.n,
                                             bl::to_dyadic(win.a, pbits),
                                             bl::to_dyadic(win.b, pbits), tol,
                                             o.cap ? o.cap : bl::kDefaultParamCap);
            emit(json(rep));
        } else if (app.got_subcommand(c_full)) {
            bl::Word w = bl::parse_word(o.w);
            bool has_x = f_x->count() > 0, has_beta = f_beta->count() > 0;
            if (has_x == has_beta)
                throw bl::parse_error("full-check: pass exactly one of --x (parameter side) or --beta (shift side)");
            if (has_x) {
                bl::Dyadic x = bl::to_dyadic(o.x, pbits);
                auto lo = bl::lower_beta(w, x, tol);
                auto hi = bl::upper_beta(w, x, tol);
                bool full = bl::is_full_param(w, x, tol);
                emit(json{{"w", w}, {"side", "parameter"}, {"lower_is_one", lo.is_one},
                          {"lo", lo.beta}, {"hi", hi}, {"full", full}});
            } else {
                bl::Dyadic beta = bl::to_dyadic(o.beta, pbits);
                bool adm = bl::is_admissible(w, beta);
                bool full = adm && bl::is_full_word(w, beta);
                emit(json{{"w", w}, {"side", "shift"}, {"admissible", adm}, {"full", full}});
            }
        } else if (app.got_subcommand(c_prop)) {
            auto rep = bl::full_proportion_report(bl::to_dyadic(o.beta, pbits),
                                                  bl::to_dyadic(o.lambda, pbits), o.n_lo, o.n_hi,
                                                  o.cap ? o.cap : bl::kDefaultEnumerationCap);
            emit(json(rep));
        } else if (app.got_subcommand(c_slice)) {
            auto s = bl::phi_slice(bl::parse_word(o.w), bl::to_dyadic(o.x, pbits),
                                   bl::to_dyadic(o.target, pbits), bl::to_dyadic(o.radius, pbits),
                                   tol);
            emit(json(s));
        } else if (app.got_subcommand(c_scan_e)) {
            auto win = split_pair(o.window, "window");
            auto targets = bl::TargetSpec::parse(o.targets);
            auto phi = bl::RateSpec::parse(o.phi);
            bl::Dyadic x = bl::to_dyadic(o.x, pbits);
            bl::Dyadic wlo = bl::to_dyadic(win.a, pbits), whi = bl::to_dyadic(win.b, pbits);
            auto curve = bl::hit_scan_param(x, targets, phi, wlo, whi, o.samples, o.nmax, o.seed,
                                            o.workers, o.orbit_cap);
            std::ostringstream key;
            key << "scan-e|x=" << x.to_decimal() << "|targets=" << targets.describe()
                << "|phi=" << phi.describe() << "|window=" << wlo.to_decimal() << ","
                << whi.to_decimal() << "|samples=" << o.samples << "|nmax=" << o.nmax
                << "|seed=" << o.seed << "|orbit_cap=" << o.orbit_cap;
            emit_curve(curve, key.str());
        } else if (app.got_subcommand(c_scan_r)) {
            auto phi = bl::RateSpec::parse(o.phi);
            bl::Dyadic beta = bl::to_dyadic(o.beta, pbits);
            bl::AffineMap L{bl::parse_rational(o.a), bl::parse_rational(o.b)};
            auto curve = bl::recurrence_scan(beta, L, phi, o.samples, o.nmax, o.seed, o.workers,
                                             o.orbit_cap);
            std::ostringstream key;
            key << "scan-r|beta=" << beta.to_decimal() << "|a=" << bl::rational_string(L.a)
                << "|b=" << bl::rational_string(L.b) << "|phi=" << phi.describe()
                << "|samples=" << o.samples << "|nmax=" << o.nmax << "|seed=" << o.seed
                << "|orbit_cap=" << o.orbit_cap;
            emit_curve(curve, key.str());
        } else if (app.got_subcommand(c_bstar)) {
            auto b = bl::beta_star(bl::RateSpec::parse(o.l), o.prec);
            emit(json(b));
        } else if (app.got_subcommand(c_slice_r)) {
            bl::AffineMap L{bl::parse_rational(o.a), bl::parse_rational(o.b)};
            auto s = bl::recurrence_slice(bl::parse_word(o.w), bl::to_dyadic(o.beta, pbits), L,
                                          bl::parse_rational(o.phi), tol);
            emit(json(s));
        }
    } catch (const bl::cap_exceeded& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const bl::tolerance_unreachable& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const bl::depth_exhausted& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const bl::no_sign_change& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const bl::error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
