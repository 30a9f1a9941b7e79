#include "plugs/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "plugs/bordism.hpp"
#include "plugs/denjoy.hpp"
#include "plugs/flowcore.hpp"
#include "plugs/goldendio.hpp"
#include "plugs/plfoliate.hpp"
#include "plugs/smoothkit.hpp"
#include "plugs/wilson.hpp"

namespace plugs::suites {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTau = 1.6180339887498948482;

using Checks = std::vector<CheckResult>;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

void add(Checks& c, int criterion, const std::string& name, bool pass,
         const std::string& detail) {
    c.push_back({criterion, name, pass, detail});
}

// ---- profiles (criterion 1) ----

Checks suite_profiles(const SuiteConfig&) {
    Checks c;
    const double I =
        smoothkit::integrate_adaptive(smoothkit::bump_b, 0.0, 1.0, 1e-13);
    add(c, 1, "bump integral", std::abs(I - 1.0) <= 1e-10,
        "int b = " + fmt(I));

    const int N = 100000;
    double sup_b = 0, min_Bb = 1e300;
    bool dominated = true;
    for (int i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) / N;
        const double b = smoothkit::bump_b(x);
        const double B = smoothkit::bump_B(x);
        sup_b = std::max(sup_b, b);
        if (B < b) dominated = false;
        if (b > 0) min_Bb = std::min(min_Bb, B - b);
    }
    add(c, 1, "sup b <= 4", sup_b <= 4.0, "sup b = " + fmt(sup_b));
    add(c, 1, "B dominates b", dominated && min_Bb > 0,
        "min(B-b) on supp b = " + fmt(min_Bb));

    bool support_ok = true;
    for (int i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) / N;
        if ((x < 1.0 / 3 || x > 2.0 / 3) && smoothkit::bump_b(x) != 0.0)
            support_ok = false;
    }
    add(c, 1, "b supported in [1/3,2/3]", support_ok, "grid 1e5");

    const bool e_ok = smoothkit::transition_e(-1) == 0.0 &&
                      smoothkit::transition_e(1) == 0.0 &&
                      smoothkit::transition_e(0) == 1.0;
    const bool o_ok = smoothkit::odd_o(-1) == -1.0 &&
                      smoothkit::odd_o(1) == 1.0 &&
                      smoothkit::odd_o(0) == 0.0 &&
                      smoothkit::odd_o_prime(0) == 0.0;
    add(c, 1, "transition e boundary values", e_ok,
        "e(-1)=0, e(0)=1, e(1)=0 exact");
    add(c, 1, "odd profile o boundary values", o_ok,
        "o(+-1)=+-1, o(0)=o'(0)=0 exact");
    return c;
}

// ---- diophantine (criterion 2) ----

Checks suite_diophantine(const SuiteConfig&) {
    Checks c;
    bool dist_ok = true, alt_ok = true;
    int prev_side = 0;
    for (int n = 1; n <= 40; ++n) {
        const auto r = goldendio::fib_distance_check(n);
        if (!r.ok) dist_ok = false;
        if (prev_side != 0 && r.side != -prev_side) alt_ok = false;
        prev_side = r.side;
    }
    add(c, 2, "fibonacci residue distances (n<=40)", dist_ok,
        "d(F_n mod tau, 0) = tau^-n exactly");
    add(c, 2, "residues alternate sides", alt_ok, "sign flips each n");

    bool opt_ok = true;
    int n_max = 0;
    for (int n = 1; goldendio::fibonacci(n) <= 100000; ++n) {
        if (!goldendio::fib_optimal_check(n)) opt_ok = false;
        n_max = n;
    }
    add(c, 2, "fibonacci optimality (F_n <= 1e5)", opt_ok,
        "brute force up to n = " + std::to_string(n_max));
    return c;
}

// ---- wilson (criteria 3, 4) ----

bool orbit_closes(const flowcore::SampledField& f, const flowcore::Vec3& seed,
                  double t_max) {
    flowcore::IntegrateOptions co;
    co.detect_closed = true;
    co.t_max = t_max;
    co.tol = 1e-10;
    co.store_every = 0;
    return flowcore::integrate(f, seed, co).exit_code ==
           flowcore::ExitCode::closed_detected;
}

Checks suite_wilson(const SuiteConfig& cfg) {
    Checks c;
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-6;

    // W_s: the single closed orbit at (r, z) = (2, 0)
    const auto ws = wilson::field_Ws();
    {
        flowcore::IntegrateOptions co;
        co.detect_closed = true;
        co.t_max = 10;
        co.tol = 1e-11;
        const auto orb = flowcore::integrate(ws, {2.0, 0.7, 0.0}, co);
        const bool closed =
            orb.exit_code == flowcore::ExitCode::closed_detected &&
            std::abs(orb.closed_period - 2 * kPi) <= tol &&
            std::abs(orb.end().x - 2.0) <= tol && std::abs(orb.end().z) <= tol;
        add(c, 3, "W_s closed orbit at r=2, z=0", closed,
            "period = " + fmt(orb.closed_period));
    }
    {
        int extra = 0;
        for (double r = 1.1; r < 2.95; r += 0.2)
            for (double z : {-0.4, 0.0, 0.4}) {
                if (std::abs(r - 2.0) < 1e-9 && z == 0.0) continue;
                if (orbit_closes(ws, {r, 0.0, z}, 15)) ++extra;
            }
        for (double z : {-0.4, 0.4})
            if (orbit_closes(ws, {2.0, 0.0, z}, 15)) ++extra;
        add(c, 3, "W_s has no other closed orbit", extra == 0,
            std::to_string(extra) + " extra closures in seed sweep");
    }

    // W: matched ends, two closed orbits, classification
    const auto W = wilson::plug_W(200, cfg.seed);
    {
        const auto rep = bordism::matched_ends_check(W.record, tol, 2 * kPi);
        add(c, 3, "W matched ends (200 entries)", rep.pass,
            "max mismatch = " + fmt(rep.max_mismatch));
        add(c, 3, "W classifies as plug",
            bordism::classify(W.record, tol, 2 * kPi) ==
                bordism::BordismClass::plug,
            "property (i) and (ii)");
    }
    {
        bool two = true;
        for (double zc : {0.0, wilson::kMirrorCenter}) {
            flowcore::IntegrateOptions co;
            co.detect_closed = true;
            co.t_max = 10;
            co.tol = 1e-11;
            const auto orb = flowcore::integrate(W.field, {2.0, 0.0, zc}, co);
            if (orb.exit_code != flowcore::ExitCode::closed_detected ||
                std::abs(orb.closed_period - 2 * kPi) > tol)
                two = false;
        }
        int extra = 0;
        for (double r = 1.1; r < 2.95; r += 0.3)
            for (double z : {-0.4, 0.7, 1.5, 2.6}) {
                if (std::abs(r - 2.0) < 1e-9) continue;
                if (orbit_closes(W.field, {r, 0.0, z}, 15)) ++extra;
            }
        add(c, 3, "W has exactly two closed orbits", two && extra == 0,
            "at z = 0 and z = 2.1; " + std::to_string(extra) + " extra");
        add(c, 3, "W_s record is a semi-plug",
            bordism::classify(wilson::record_Ws(50, cfg.seed), tol, 2 * kPi) ==
                bordism::BordismClass::semi_plug,
            "one closed leaf, unmatched ends");
    }

    // stopped set of W_s concentrates on the circle r = 2
    {
        // node-centered radial grid: transit time grows only like
        // log(1/|r-2|), so the stopped column is the exact r = 2 circle
        const int g = cfg.grid > 0 ? cfg.grid : 512;
        std::vector<flowcore::Vec3> entries;
        entries.reserve(static_cast<std::size_t>(g) * g);
        for (int i = 1; i < g; ++i) {
            const double r = 1.0 + 2.0 * i / g;
            for (int j = 0; j < g; ++j)
                entries.push_back({r, 2 * kPi * j / g, -1.0});
        }
        const auto stopped =
            bordism::stopped_set_estimate(ws, entries, 60.0, 1e-5);
        double d_to_circle = 0;
        for (const auto& p : stopped)
            d_to_circle = std::max(d_to_circle, std::abs(p.x - 2.0));
        double d_from_circle = 0;
        for (int j = 0; j < 4 * g; ++j) {
            const double th = 2 * kPi * j / (4 * g);
            double best = 1e300;
            for (const auto& p : stopped) {
                const double dx = p.x * std::cos(p.y) - 2 * std::cos(th);
                const double dy = p.x * std::sin(p.y) - 2 * std::sin(th);
                best = std::min(best, dx * dx + dy * dy);
            }
            d_from_circle = std::max(d_from_circle, std::sqrt(best));
        }
        const double haus = std::max(d_to_circle, d_from_circle);
        add(c, 3, "W_s stopped set is the circle r=2",
            !stopped.empty() && haus < 0.02,
            "Hausdorff distance = " + fmt(haus) + " at grid " +
                std::to_string(g) + "^2, " + std::to_string(stopped.size()) +
                " stopped probes");
    }

    // criterion 4: the Dehn-twist winding discrepancy of P
    {
        const auto P = wilson::plug_P(100, cfg.seed);
        flowcore::IntegrateOptions opt;
        opt.t_max = 500;
        opt.tol = 1e-11;
        opt.store_every = 0;
        const auto inner = flowcore::integrate(P.field, {1.5, 0.0, -1.0}, opt);
        const auto outer = flowcore::integrate(P.field, {2.5, 0.0, -1.0}, opt);
        const double diff = outer.winding.y - inner.winding.y;
        add(c, 4, "P winding difference is 2 pi",
            inner.exit_code == flowcore::ExitCode::exited_boundary &&
                outer.exit_code == flowcore::ExitCode::exited_boundary &&
                std::abs(diff - 2 * kPi) <= 1e-3,
            "(r=2.5) - (r=1.5) = " + fmt(diff));
        const double I = smoothkit::integrate_adaptive(
            [](double z) {
                return 3 * kPi * smoothkit::bump_b((1 + 3 * z) / 2);
            },
            -1.0 / 3, 1.0 / 3, 1e-13);
        add(c, 4, "bump integral is 2 pi", std::abs(I - 2 * kPi) <= 1e-10,
            "integral = " + fmt(I));
        add(c, 4, "P carries an integral Dehn twist",
            P.record.twist == bordism::Twist::integral_dehn &&
                P.record.twist_k == 1,
            "twist k = " + std::to_string(P.record.twist_k));
    }
    return c;
}

// ---- vpfields (criteria 5, 7) ----

Checks suite_vpfields(const SuiteConfig& cfg) {
    Checks c;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    auto cyl_points = [&](double z_lo, double z_hi) {
        std::vector<flowcore::Vec3> pts;
        for (int i = 0; i < 1000; ++i)
            pts.push_back({1.05 + 1.9 * u01(rng), 2 * kPi * u01(rng),
                           z_lo + (z_hi - z_lo) * u01(rng)});
        return pts;
    };
    auto check_div = [&](const char* name, const flowcore::SampledField& f,
                         const std::vector<flowcore::Vec3>& pts) {
        const auto rep = flowcore::divergence_check(f, pts, 1e-4);
        add(c, 5, std::string("divergence of ") + name,
            rep.max_rel_div <= 1e-4,
            "max |div|/(1+|field|) = " + fmt(rep.max_rel_div) + " on " +
                std::to_string(rep.n_points) + " points");
    };

    check_div("W_s", wilson::field_Ws(), cyl_points(-0.95, 0.95));
    const auto [p1, p2] = wilson::fields_P1P2();
    check_div("P1", p1, cyl_points(-0.95, 0.95));
    check_div("P2", p2, cyl_points(-0.95, 0.95));

    {
        const auto wh = wilson::wormhole_field();
        std::vector<flowcore::Vec3> pts;
        std::uniform_real_distribution<double> ub(-3.4, 3.4);
        while (pts.size() < 1000) {
            flowcore::Vec3 p{ub(rng), ub(rng), ub(rng)};
            if (std::hypot(p.x, p.y, p.z) < 0.6) continue;
            bool inside = true;
            for (int a = 0; a < 3 && inside; ++a)
                for (double s : {-0.01, 0.01}) {
                    flowcore::Vec3 q = p;
                    q[a] += s;
                    if (!wh.domain(q)) inside = false;
                }
            if (inside) pts.push_back(p);
        }
        check_div("wormhole", wh, pts);
    }

    {
        // Denjoy-derived fields: a large truncation width keeps all features
        // far above the finite-difference step
        denjoy::Params pd;
        pd.delta = 0.2;
        pd.C_v = cfg.c_v > 0 ? cfg.c_v : 1.13;
        const auto fields = denjoy::fields_hvE(pd);
        std::vector<flowcore::Vec3> pts;
        for (int i = 0; i < 1000; ++i) {
            const double sgn = u01(rng) < 0.5 ? -1.0 : 1.0;
            pts.push_back({u01(rng), u01(rng), sgn * (0.2 + 0.7 * u01(rng))});
        }
        check_div("h", fields.h, pts);
        check_div("v", fields.v, pts);
        check_div("E'", fields.Ep, pts);
    }

    // criterion 7: property (iv) on the 1e5-point grid, calibrated constant
    {
        const denjoy::GridSpec g;
        const auto cal = denjoy::calibrate_C(g, 1e-6);
        denjoy::GridSpec g2 = g;
        g2.n_theta *= 2;
        g2.n_z *= 2;
        const auto cal2 = denjoy::calibrate_C(g2, 1e-6);
        const double rel =
            std::abs(cal2.C_v - cal.C_v) / std::max(cal.C_v, cal2.C_v);
        add(c, 7, "calibration grid-stable", rel <= 0.10,
            "C_v = " + fmt(cal.C_v) + " vs " + fmt(cal2.C_v) + " (2x grid), " +
                fmt(100 * rel) + "% change");

        denjoy::Params p7;
        p7.C_v = cfg.c_v > 0 ? cfg.c_v : cal.C_v;
        const auto rep = denjoy::verify_property_iv(p7, g);
        add(c, 7, "property (iv): v_z > |h_z|",
            rep.pass && rep.min_margin > rep.tail_bound + rep.eps_a,
            "min margin = " + fmt(rep.min_margin) + " > tail bound " +
                fmt(rep.tail_bound) + " + eps_a " + fmt(rep.eps_a) + " on " +
                std::to_string(rep.n_points) + " points (C_v = " +
                fmt(p7.C_v) + ")");
    }
    return c;
}

// ---- denjoy (criterion 6) ----

Checks suite_denjoy(const SuiteConfig& cfg) {
    Checks c;
    const double delta = 1e-9;

    double worst = 0;
    for (std::int64_t n = -50; n <= 50; ++n) {
        const auto [left, width] = denjoy::interval_at(n, 0.0, delta);
        const auto [left1, width1] = denjoy::interval_at(n + 1, 0.0, delta);
        const double I = smoothkit::integrate_adaptive(
            [&](double x) {
                double xm = x - std::floor(x);
                return denjoy::denjoy_map(xm, delta).deriv;
            },
            left, left + width, 1e-13);
        worst = std::max(worst, std::abs(I - width1));
        (void)left1;
    }
    add(c, 6, "interval images: int alpha' = |I_{n+1}|", worst <= 1e-10,
        "max error = " + fmt(worst) + " for |n| <= 50");

    const double rho = denjoy::rotation_number(
        [&](double x) { return denjoy::denjoy_map(x, delta).image; }, 0.351,
        10000);
    add(c, 6, "rotation number is tau - 1",
        std::abs(rho - (kTau - 1)) <= 1e-3, "rho = " + fmt(rho));

    // no periodic orbit of period <= 100 among 1e3 seeds: a near-return is
    // only periodic if every multiple of the period also returns
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int periodic = 0;
    const auto step = [&](double x) { return denjoy::denjoy_map(x, delta).image; };
    for (int s = 0; s < 1000; ++s) {
        const double x0 = u01(rng);
        double x = x0;
        for (int j = 1; j <= 100; ++j) {
            x = step(x);
            double d = std::abs(x - x0);
            d = std::min(d, 1.0 - d);
            if (d < 1e-4) {
                bool sustained = true;
                double y = x;
                for (int m = 2; m <= 10 && sustained; ++m) {
                    for (int t = 0; t < j; ++t) y = step(y);
                    double dm = std::abs(y - x0);
                    dm = std::min(dm, 1.0 - dm);
                    if (dm >= 1e-4) sustained = false;
                }
                if (sustained) ++periodic;
                break;
            }
        }
    }
    add(c, 6, "no periodic orbit of period <= 100", periodic == 0,
        std::to_string(periodic) + " sustained returns among 1000 seeds");
    return c;
}

// ---- pl (criteria 8, 9) ----

Checks suite_pl(const SuiteConfig& cfg) {
    Checks c;
    using namespace plfoliate;

    bool exact = true;
    std::string why = "f, g1, g2 all exact";
    try {
        if (!check_area_preserving(build_trapezoid_f())) exact = false;
        if (!check_area_preserving(build_g1())) exact = false;
        if (!check_area_preserving(build_g2())) exact = false;
    } catch (const std::exception& e) {
        exact = false;
        why = e.what();
    }
    add(c, 8, "trapezoid map and assemblies are exact tilings", exact, why);

    const auto s1 = suspension_S1();
    const auto s2 = suspension_S2();
    const auto fp = fixed_points(s1);
    add(c, 8, "S1 return map has exactly one fixed point",
        fp.size() == 1 && fp[0] == RatPoint{0, 1}, "at (0, 1), exact solve");
    int k = -999;
    try {
        k = dehn_twist_count(s1, s2);
    } catch (const std::exception&) {
    }
    add(c, 8, "dehn_twist_count(S1, S2) = 1", k == 1,
        "twist = " + std::to_string(k));

    // criterion 9: random Moser instances
    std::mt19937 rng(cfg.seed);
    bool moser_ok = true;
    for (int trial = 0; trial < 100 && moser_ok; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 99);
        SimplicialMeasure m1, m2;
        for (int v = 1; v < n; ++v)
            m1.edges.emplace_back(static_cast<int>(rng() % v), v);
        for (int e = 0; e < n / 3; ++e)
            m1.edges.emplace_back(static_cast<int>(rng() % n),
                                  static_cast<int>(rng() % n));
        for (int v = 0; v < n; ++v)
            m1.measure.emplace_back(1 + static_cast<int>(rng() % 1000));
        m2.edges = m1.edges;
        m2.measure = m1.measure;
        std::shuffle(m2.measure.begin(), m2.measure.end(), rng);
        const auto plan = moser_plan(m1, m2);
        for (const auto& t : plan)
            if (t.amount <= 0) moser_ok = false;
        const auto [fin, mn] = replay_plan(m1, plan);
        if (fin != m2.measure || mn <= 0) moser_ok = false;
    }
    add(c, 9, "100 random Moser instances replay exactly", moser_ok,
        "plans valid, intermediates positive, exact targets");

    bool tri_ok = true;
    const std::vector<RatPoint> T1{{0, 0}, {1, 0}, {0, 1}};
    const std::vector<RatPoint> T2{{1, 0}, {0, 1}, {1, 1}};
    const auto m = triangle_pair_transfer(T1, T2, Rat(1, 4));
    Rat c_side = 0;
    for (const auto& pc : m.pieces) {
        bool has_c = false;
        for (const auto& v : pc.poly)
            if (v == RatPoint{0, 0}) has_c = true;
        if (!has_c) continue;
        std::vector<RatPoint> ip;
        for (const auto& v : pc.poly) ip.push_back(pc.map(v));
        c_side += boost::multiprecision::abs(polygon_area(ip));
    }
    if (c_side != Rat(1, 4)) tri_ok = false;
    const auto minv = inverse_map(m);
    for (int i = 0; i < 20; ++i) {
        const Rat a(1 + static_cast<int>(rng() % 97), 100);
        const Rat b((100 - static_cast<int>(rng() % 99)), 200);
        const RatPoint p{a, std::min(b, Rat(1) - a + Rat(1, 200))};
        const auto q = m.apply(p);
        if (!q || *minv.apply(*q) != p) tri_ok = false;
    }
    add(c, 9, "triangle transfer: exact areas, inverse identity", tri_ok,
        "moved area 1/4 exactly; 20 round trips exact");
    return c;
}

// ---- bordism (criterion 10) ----

Checks suite_bordism(const SuiteConfig& cfg) {
    Checks c;
    const auto P = wilson::plug_P(30, cfg.seed);
    const auto W = wilson::plug_W(30, cfg.seed + 1);
    const auto D = wilson::plug_D_ledger(P.record, W.record);
    add(c, 10, "plug D has two closed leaves", D.closed_leaf_count == 2,
        "count = " + std::to_string(D.closed_leaf_count));

    // T^3 irrational flow + k copies of D + one W breaking everything
    const int k = 3;
    std::vector<bordism::Insertion> ins;
    std::vector<std::string> d_orbits;
    for (int i = 0; i < k; ++i) {
        bordism::Insertion d;
        d.record = D;
        d.record.name = "D" + std::to_string(i + 1);
        d.framing = i % 2 == 0 ? "m+l" : "m-l";
        ins.push_back(d);
        d_orbits.push_back(d.record.name + "#1");
        d_orbits.push_back(d.record.name + "#2");
    }
    bordism::Insertion wfin;
    wfin.record = W.record;
    wfin.record.name = "W";
    wfin.broken_orbits = d_orbits;
    wfin.framing = "m+l";
    ins.push_back(wfin);

    const auto ledger = bordism::insertion_ledger("T3", {}, ins);
    add(c, 10, "ledger final closed-leaf count is 2", ledger.final_count == 2,
        "T3 + " + std::to_string(k) + "D + W -> " +
            std::to_string(ledger.final_count));
    add(c, 10, "all pre-final orbits broken", ledger.all_base_orbits_broken,
        "certificate from ledger replay");
    const auto js = bordism::ledger_json(ledger);
    add(c, 10, "ledger JSON replayable",
        js.find("\"final_count\":2") != std::string::npos, js);
    return c;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "profiles", "diophantine", "wilson", "vpfields",
        "denjoy",   "pl",          "bordism"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport r;
    r.suite = name;
    if (name == "profiles")
        r.checks = suite_profiles(cfg);
    else if (name == "diophantine")
        r.checks = suite_diophantine(cfg);
    else if (name == "wilson")
        r.checks = suite_wilson(cfg);
    else if (name == "vpfields")
        r.checks = suite_vpfields(cfg);
    else if (name == "denjoy")
        r.checks = suite_denjoy(cfg);
    else if (name == "pl")
        r.checks = suite_pl(cfg);
    else if (name == "bordism")
        r.checks = suite_bordism(cfg);
    else
        throw std::invalid_argument("unknown suite: " + name);
    r.pass = true;
    for (const auto& ck : r.checks)
        if (!ck.pass) r.pass = false;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    return r;
}

std::vector<SuiteReport> run_all(const SuiteConfig& cfg) {
    std::vector<SuiteReport> out;
    for (const auto& n : suite_names()) out.push_back(run_suite(n, cfg));
    return out;
}

std::string reports_json(const std::vector<SuiteReport>& reports,
                         const SuiteConfig& cfg) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["config"] = {{"seed", cfg.seed},
                   {"grid", cfg.grid},
                   {"tol", cfg.tol},
                   {"cv", cfg.c_v}};
    j["suites"] = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& r : reports) {
        nlohmann::ordered_json js;
        js["suite"] = r.suite;
        js["pass"] = r.pass;
        js["seconds"] = r.seconds;
        js["checks"] = nlohmann::ordered_json::array();
        for (const auto& ck : r.checks)
            js["checks"].push_back({{"criterion", ck.criterion},
                                    {"name", ck.name},
                                    {"pass", ck.pass},
                                    {"detail", ck.detail}});
        j["suites"].push_back(js);
        if (!r.pass) all = false;
    }
    j["pass"] = all;
    return j.dump(2);
}

}  // namespace plugs::suites
