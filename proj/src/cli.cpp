#include "qmsplit/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <random>

#include "qmsplit/config.hpp"
#include "qmsplit/report.hpp"
#include "qmsplit/sampling.hpp"

namespace qmsplit {

namespace {

struct Outcome {
    Json results = Json::object();
    std::vector<std::string> citations;
    bool passed = true;
};

struct CheckTally {
    std::string name;
    long samples = 0;
    long failed = 0;
    std::optional<ApReal> worst;  // largest defect, or smallest margin for positivity checks
    std::string measure;

    void record(bool ok) {
        ++samples;
        if (!ok) ++failed;
    }
    void track_max(const ApReal& v) {
        if (!worst || v > *worst) worst = v;
    }
    void track_min(const ApReal& v) {
        if (!worst || v < *worst) worst = v;
    }
    Json to_json() const {
        Json j{{"name", name}, {"samples", samples}, {"passed", samples - failed}, {"failed", failed}};
        if (worst) j[measure] = qmsplit::to_json(*worst);
        return j;
    }
};

std::array<Rational, 4> parse_four(const std::string& text, const std::string& what) {
    std::string spaced = text;
    for (auto& c : spaced)
        if (c == ',') c = ' ';
    std::istringstream in(spaced);
    std::vector<std::string> toks;
    for (std::string t; in >> t;) toks.push_back(t);
    if (toks.size() != 4) throw ConfigError(what + " needs 4 comma-separated rationals");
    std::array<Rational, 4> out;
    for (int i = 0; i < 4; ++i) {
        try {
            out[i] = parse_rational(toks[i]);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(what + ": " + e.what());
        }
    }
    return out;
}

Json quaternion_basis_json(const OrderLattice& order) {
    Json rows = Json::array();
    for (const auto& g : order.generators()) rows.push_back(to_json(g));
    return rows;
}

Outcome algebra_check(const Config& cfg) {
    AlgebraParams params(cfg.a, cfg.b);
    Outcome o;
    Json ramified = Json::array();
    for (const auto& p : ramified_primes(params)) ramified.push_back(to_json(p));
    Json hilbert = Json::object();
    hilbert["inf"] = hilbert_symbol(cfg.a, cfg.b, Place::infinity());
    std::set<Integer> primes{2};
    for (const auto& p : prime_factors(cfg.a.get_num() * cfg.a.get_den())) primes.insert(p);
    for (const auto& p : prime_factors(cfg.b.get_num() * cfg.b.get_den())) primes.insert(p);
    for (const auto& p : primes) hilbert[p.get_str()] = hilbert_symbol(cfg.a, cfg.b, Place::finite(p));
    o.results = Json{{"a", to_json(cfg.a)},
                     {"b", to_json(cfg.b)},
                     {"ramified", ramified},
                     {"discriminant", to_json(algebra_discriminant(params))},
                     {"division", is_indefinite_division(params)},
                     {"indefinite", hilbert_symbol(cfg.a, cfg.b, Place::infinity()) == 1},
                     {"hilbert_symbols", hilbert}};
    o.citations = {"B is a division algebra iff it ramifies at some finite prime; it is indefinite iff (a, b) "
                   "splits at infinity"};
    return o;
}

Outcome order_command(const std::string& which, const Config& cfg) {
    Outcome o;
    if (which == "verify") {
        Workspace ws = build_workspace(cfg, false);
        auto cert = is_order(ws.order);
        o.results = Json{{"is_order", cert.is_order}, {"violations", cert.violations},
                         {"basis", quaternion_basis_json(ws.order)}};
        o.citations = {"an order is a full lattice containing 1 that is closed under multiplication"};
        return o;
    }
    Workspace ws = build_workspace(cfg);
    if (which == "disc") {
        o.results = Json{{"reduced_discriminant", to_json(reduced_discriminant(ws.order))}};
    } else if (which == "maximal") {
        bool maximal = is_maximal(ws.order);
        o.results = Json{{"maximal", maximal},
                         {"reduced_discriminant", to_json(reduced_discriminant(ws.order))},
                         {"algebra_discriminant", to_json(algebra_discriminant(ws.algebra.params()))}};
        o.citations = {"an order is maximal iff its reduced discriminant equals the discriminant of B"};
    } else {
        OrderLattice sat = saturate(ws.order);
        o.results = Json{{"basis", quaternion_basis_json(sat)},
                         {"reduced_discriminant", to_json(reduced_discriminant(sat))},
                         {"contains_input", sat.contains(ws.order.generator(0)) && sat.contains(ws.order.generator(1)) &&
                                                sat.contains(ws.order.generator(2)) && sat.contains(ws.order.generator(3))}};
    }
    return o;
}

Outcome units_command(const Config& cfg, long height, long level, unsigned threads) {
    Workspace ws = build_workspace(cfg);
    auto units = enumerate_units(ws.order, height, threads);
    if (level > 1) units = congruence_filter(ws.order, units, Integer(level));
    Outcome o;
    Json list = Json::array();
    long elliptic = 0;
    for (const auto& u : units) {
        list.push_back(to_json(u));
        if (u.is_elliptic) ++elliptic;
    }
    o.results = Json{{"height", height}, {"level", level}, {"count", units.size()}, {"elliptic_count", elliptic},
                     {"units", list}};
    return o;
}

Outcome cm_command(const Config& cfg, long height, const std::string& window_text, unsigned threads) {
    Workspace ws = build_workspace(cfg);
    auto w = parse_four(window_text, "--window");
    Window window{w[0], w[1], w[2], w[3]};
    auto points = enumerate_cm_points(ws.order, height, window, cfg.tolerance, threads, cfg.precision);
    Outcome o;
    Json list = Json::array();
    for (const auto& p : points) list.push_back(to_json(p));
    o.results = Json{{"height", height}, {"count", points.size()}, {"points", list}};
    o.citations = {"A_tau is isogenous to a product of elliptic curves iff tau is fixed by a projectively "
                   "nontrivial element of B^x",
                   "in that case the elliptic curves and A_tau have complex multiplication (recorded, not verified)"};
    return o;
}

Outcome fiber_command(const Config& cfg, const std::string& tau_text) {
    Workspace ws = build_workspace(cfg);
    ApComplex tau;
    try {
        tau = parse_complex(tau_text, cfg.precision);
        (void)UpperHalfPoint(tau);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--tau: ") + e.what());
    }
    auto report = fiber_h0(ws.order, UpperHalfPoint(tau));
    Outcome o;
    o.results = to_json(report);
    o.results["tau"] = to_json(tau);
    o.citations = report.citations;
    return o;
}

Outcome curve_command(const Config& cfg, const std::string& mu_text) {
    Workspace ws = build_workspace(cfg);
    QuatElement mu = QuatElement::from_coords(parse_four(mu_text, "--mu"));
    if (mu.is_zero()) throw ConfigError("--mu must be nonzero");
    if (!ws.order.contains(mu)) throw ComputationError(to_string(mu) + " is not in the order");
    if (!is_elliptic(ws.algebra, mu)) throw NotElliptic(to_string(mu) + " is not elliptic");
    const bool negated = ws.algebra.embed(mu)(1, 0).sign() < 0;
    if (negated) mu = -mu;
    UpperHalfPoint tau = fixed_point(ws.algebra, mu, cfg.precision);
    ApComplex tp = eigenvalue_tau_prime(ws.algebra, mu, tau, cfg.tolerance);
    std::array<Integer, 4> coords;
    auto rc = ws.order.coordinates(mu);
    for (int i = 0; i < 4; ++i) coords[i] = rc[i].get_num();
    CMPoint point{mu, coords, tau, tp, ws.algebra.trd(mu), ws.algebra.nrd(mu)};
    auto report = curve_h0(ws.algebra, point);
    Outcome o;
    o.results = Json{{"mu", to_json(mu)}, {"negated", negated}, {"tau", to_json(tau.tau())},
                     {"tau_prime", to_json(tp)}};
    o.results.update(to_json(report));
    o.citations = report.citations;
    if (report.curve && report.dphi_value && !(tau.tau() == tp))
        o.citations.push_back("dphi evaluated at tau' (module definition); the tau form f1 tau + f2 is reported as "
                              "dphi_tau_form");
    return o;
}

Outcome classify_command(const Candidate& c) {
    auto report = classify_candidate(c);
    Outcome o;
    o.results = Json{{"kind", to_string(report.kind)}, {"verdict", to_string(report.verdict)}};
    o.citations = report.citations;
    return o;
}

CheckTally riemann_suite(const Workspace& ws, const Config& cfg, long samples) {
    std::mt19937_64 rng(cfg.seed);
    const QuatElement rho = cfg.rho.value_or(QuatElement::y());
    Polarization pol = Polarization::minimal(ws.order, rho);
    CheckTally t{"riemann", 0, 0, std::nullopt, "min_leading_minor"};
    for (long i = 0; i < samples; ++i) {
        UpperHalfPoint tau(random_tau(rng, cfg.precision));
        auto lat = period_lattice(ws.order, tau, rank_tolerance());
        auto rep = riemann_conditions_check(ws.order, lat, pol, cfg.tolerance);
        t.record(rep.all_pass());
        t.track_min(rep.minor1 < rep.minor2 ? rep.minor1 : rep.minor2);
    }
    return t;
}

std::vector<QuatElement> sample_units(const Workspace& ws) {
    std::vector<QuatElement> out;
    for (const auto& u : enumerate_units(ws.order, 1)) out.push_back(u.element);
    return out;
}

std::vector<CheckTally> cocycle_suite(const Workspace& ws, const Config& cfg, long samples) {
    std::mt19937_64 rng(cfg.seed);
    auto units = sample_units(ws);
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    CheckTally cocycle{"cocycle", 0, 0, std::nullopt, "max_defect"};
    CheckTally degree{"canonical_degree", 0, 0, std::nullopt, "max_defect"};
    for (long i = 0; i < samples; ++i) {
        FamilyGroupElement g1{random_order_element(ws.order, rng, 2), units[pick(rng)]};
        FamilyGroupElement g2{random_order_element(ws.order, rng, 2), units[pick(rng)]};
        FamilyPoint x{random_vector(rng, 2, cfg.precision), random_tau(rng, cfg.precision)};
        auto c = cocycle_check(ws.algebra, g1, g2, x, cfg.tolerance);
        cocycle.record(c.ok);
        cocycle.track_max(c.defect);
        auto d = canonical_degree_check(ws.algebra, g1, x, cfg.tolerance);
        degree.record(d.ok);
        degree.track_max(d.defect);
    }
    return {cocycle, degree};
}

std::vector<CheckTally> isogeny_suite(const Workspace& ws, const Config& cfg, long samples) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<QuatElement> units;
    for (const auto& u : sample_units(ws))
        if (!u.is_scalar() && static_cast<long>(units.size()) < samples) units.push_back(u);
    CheckTally lattice{"isogeny_lattice", 0, 0, std::nullopt, "max_defect"};
    for (long i = 0; i < samples; ++i) {
        UpperHalfPoint tau(random_tau(rng, cfg.precision));
        for (const auto& g : units) {
            auto r = isogeny_lattice_check(ws.order, g, tau, cfg.tolerance);
            lattice.record(r.ok);
            lattice.track_max(r.defect);
        }
    }
    CheckTally invariance{"riemann_form_invariance", 0, 0, std::nullopt, ""};
    const QuatElement rho = cfg.rho.value_or(QuatElement::y());
    std::uniform_int_distribution<std::size_t> pick(0, units.empty() ? 0 : units.size() - 1);
    for (long i = 0; i < 5 * samples && !units.empty(); ++i) {
        QuatElement m1 = random_order_element(ws.order, rng, 3), m2 = random_order_element(ws.order, rng, 3);
        const QuatElement& g = units[pick(rng)];
        invariance.record(riemann_form(ws.algebra, rho, ws.algebra.mul(m1, g), ws.algebra.mul(m2, g)) ==
                          riemann_form(ws.algebra, rho, m1, m2));
    }
    return {lattice, invariance};
}

Outcome suite_command(const std::string& which, const Config& cfg, long samples) {
    Workspace ws = build_workspace(cfg);
    std::vector<CheckTally> tallies;
    auto want = [&](const char* name) { return which == "all" || which == name; };
    if (want("riemann")) tallies.push_back(riemann_suite(ws, cfg, samples > 0 ? samples : 20));
    if (want("cocycle"))
        for (auto& t : cocycle_suite(ws, cfg, samples > 0 ? samples : 100)) tallies.push_back(std::move(t));
    if (want("isogeny"))
        for (auto& t : isogeny_suite(ws, cfg, samples > 0 ? samples : 10)) tallies.push_back(std::move(t));
    Outcome o;
    Json checks = Json::array();
    for (const auto& t : tallies) {
        checks.push_back(t.to_json());
        if (t.failed > 0 || t.samples == 0) o.passed = false;
    }
    o.results = Json{{"suite", which}, {"passed", o.passed}, {"checks", checks}};
    o.citations = {"Riemann conditions for the period lattice with E(m1, m2) = trd(rho m1 m2')",
                   "the factor of automorphy is a cocycle with determinant (c tau + d)^-4",
                   "O_{B, gamma tau} = (c tau + d)^-1 O_{B, tau} for units gamma"};
    return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Modular families of fake elliptic curves: orders, CM points and splitting certificates",
                 "qmsplit"};
    app.require_subcommand(1);
    std::string config_path, out_path;
    app.add_option("config", config_path, "Configuration file (key = value lines); defaults to the (3,-1) example");
    app.add_option("-o,--out", out_path, "Write the JSON report to this file instead of stdout");

    std::string command;
    std::function<Outcome(const Config&)> action;
    Json echoed_args = Json::object();

    auto* algebra = app.add_subcommand("algebra", "Quaternion algebra commands");
    algebra->require_subcommand(1);
    algebra->add_subcommand("check", "Ramification and division test")->callback([&] {
        command = "algebra check";
        action = algebra_check;
    });

    auto* order = app.add_subcommand("order", "Order lattice commands");
    order->require_subcommand(1);
    for (const char* which : {"verify", "disc", "maximal", "saturate"}) {
        order->add_subcommand(which)->callback([&, which] {
            command = std::string("order ") + which;
            action = [which](const Config& c) { return order_command(which, c); };
        });
    }

    long height = 1, level = 1, samples = 0;
    unsigned threads = 1;
    auto* units = app.add_subcommand("units", "Enumerate units of reduced norm 1 in a coordinate box");
    units->add_option("--height", height, "Box half-width")->check(CLI::NonNegativeNumber);
    units->add_option("--congruence", level, "Keep units congruent to 1 modulo N")->check(CLI::PositiveNumber);
    units->add_option("--threads", threads, "Worker threads (0 = all cores)");
    units->callback([&] {
        command = "units";
        echoed_args = Json{{"height", height}, {"congruence", level}};
        action = [&](const Config& c) { return units_command(c, height, level, threads); };
    });

    std::string window = "-100,100,0,100";
    auto* cm = app.add_subcommand("cm", "CM points");
    cm->require_subcommand(1);
    auto* cm_enum = cm->add_subcommand("enumerate", "Fixed points of elliptic order elements");
    cm_enum->add_option("--height", height, "Box half-width")->check(CLI::PositiveNumber);
    cm_enum->add_option("--window", window, "re_lo,re_hi,im_lo,im_hi");
    cm_enum->add_option("--threads", threads, "Worker threads (0 = all cores)");
    cm_enum->callback([&] {
        command = "cm enumerate";
        echoed_args = Json{{"height", height}, {"window", window}};
        action = [&](const Config& c) { return cm_command(c, height, window, threads); };
    });

    std::string tau = "i";
    auto* fiber = app.add_subcommand("fiber", "Fibers of the family");
    fiber->require_subcommand(1);
    auto* fiber_h0_cmd = fiber->add_subcommand("h0", "Invariant sections on the fiber at tau");
    fiber_h0_cmd->add_option("--tau", tau, "re,im or i");
    fiber_h0_cmd->callback([&] {
        command = "fiber h0";
        echoed_args = Json{{"tau", tau}};
        action = [&](const Config& c) { return fiber_command(c, tau); };
    });

    std::string mu = "0,0,1,0";
    auto* curve = app.add_subcommand("curve", "Elliptic curves in fibers");
    curve->require_subcommand(1);
    auto* split = curve->add_subcommand("split", "Splitting of the curve attached to an elliptic mu");
    split->add_option("--mu", mu, "k,l,m,n in the basis 1, x, y, xy");
    split->callback([&] {
        command = "curve split";
        echoed_args = Json{{"mu", mu}};
        action = [&](const Config& c) { return curve_command(c, mu); };
    });

    Candidate cand;
    auto* classify = app.add_subcommand("classify", "Splitting verdict from numerical data of a submanifold");
    classify->add_option("--dimension", cand.dimension, "1 for a curve, 2 for a surface");
    classify->add_option("--genus", cand.genus, "Genus of the curve");
    classify->add_flag("--in-fiber", cand.in_fiber, "Contained in a fiber");
    classify->add_option("--degree", cand.degree_over_C, "Degree of the projection to the base curve");
    classify->add_option("--ramification", cand.ramification_degree, "Degree of the ramification divisor");
    classify->add_option("--gc", cand.g_C, "Genus of the base curve");
    classify->callback([&] {
        command = "classify";
        echoed_args = Json{{"dimension", cand.dimension}, {"genus", cand.genus},
                           {"in_fiber", cand.in_fiber},   {"degree", cand.degree_over_C},
                           {"ramification", cand.ramification_degree}, {"gc", cand.g_C}};
        action = [&](const Config&) { return classify_command(cand); };
    });

    auto* suite = app.add_subcommand("suite", "Property suites with seeded sampling");
    suite->require_subcommand(1);
    for (const char* which : {"riemann", "cocycle", "isogeny", "all"}) {
        auto* s = suite->add_subcommand(which);
        s->add_option("--samples", samples, "Sample count (0 = suite default)")->check(CLI::NonNegativeNumber);
        s->callback([&, which] {
            command = std::string("suite ") + which;
            echoed_args = Json{{"samples", samples}};
            action = [&, which](const Config& c) { return suite_command(which, c, samples); };
        });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        Config cfg = config_path.empty() ? parse_config("") : load_config(config_path);
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome = action(cfg);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        Json report{{"schema", kReportSchema},
                    {"command", command},
                    {"inputs", Json{{"config", render_config(cfg)}, {"args", echoed_args}}},
                    {"results", outcome.results},
                    {"citations", outcome.citations},
                    {"timings", Json{{"total_ms", ms}}}};
        if (out_path.empty()) {
            out << report.dump(2) << "\n";
        } else {
            std::ofstream f(out_path);
            if (!f) throw ConfigError("cannot write " + out_path);
            f << report.dump(2) << "\n";
        }
        if (!outcome.passed) {
            err << command << ": property suite failed\n";
            return kExitFailure;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ComputationError& e) {
        err << "computation error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace qmsplit
