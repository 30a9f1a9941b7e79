#include "plugs/wilson.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "plugs/smoothkit.hpp"

namespace plugs::wilson {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using flowcore::SampledField;
using flowcore::Vec3;

bool in_cylinder(const Vec3& p, double z_lo, double z_hi) {
    return p.x >= 1.0 - 1e-9 && p.x <= 3.0 + 1e-9 && p.z >= z_lo && p.z < z_hi;
}

}  // namespace

double wilson_f(double r, double z) {
    if (r < 1.0 || r > 3.0 || z < -1.0 || z > 1.0)
        throw std::domain_error("wilson_f: outside [1,3]x[-1,1]");
    const double u = r - 2.0;
    return z * z * u + (1.0 - z * z) * u * u * u;
}

std::array<double, 2> wilson_grad(double r, double z) {
    const double u = r - 2.0;
    const double fr = z * z + 3.0 * (1.0 - z * z) * u * u;
    const double fz = 2.0 * z * u * (1.0 - u * u);
    return {fr, fz};
}

double twisted_g(double r, double z) {
    if (r < 1.0 || r > 3.0 || z < -1.0 || z > 1.0)
        throw std::domain_error("twisted_g: outside [1,3]x[-1,1]");
    const double u = r - 2.0;
    const double e = smoothkit::transition_e(z);
    return e * smoothkit::odd_o(u) + (1.0 - e) * u;
}

std::array<double, 2> twisted_grad(double r, double z) {
    // clamp to the closed cylinder so integrator overshoot stays evaluable
    const double u = std::clamp(r - 2.0, -1.0, 1.0);
    const double zc = std::clamp(z, -1.0, 1.0);
    const double e = smoothkit::transition_e(zc);
    const double gr = e * smoothkit::odd_o_prime(u) + (1.0 - e);
    const double gz =
        smoothkit::transition_e_prime(zc) * (smoothkit::odd_o(u) - u);
    return {gr, gz};
}

namespace {

// theta-component excess of P1 over P2
double p1_extra_theta(double r, double z) {
    if (r <= 2.0 || std::fabs(z) > 1.0 / 3.0) return 0.0;
    return 3.0 * kPi * smoothkit::bump_b((1.0 + 3.0 * z) / 2.0) *
           smoothkit::odd_o_prime(r - 2.0);
}

Vec3 ws_eval(const Vec3& p) {
    const auto g = wilson_grad(p.x, p.z);
    return {-g[1], 1.0, g[0]};
}

Vec3 p2_eval(const Vec3& p) {
    const auto g = twisted_grad(p.x, p.z);
    return {-g[1], 1.0, g[0]};
}

Vec3 p1_eval(const Vec3& p) {
    const auto g = twisted_grad(p.x, p.z);
    return {-g[1], 1.0 + p1_extra_theta(p.x, p.z), g[0]};
}

SampledField make_cyl_field(flowcore::FieldFn eval) {
    SampledField f;
    f.eval = std::move(eval);
    f.domain = [](const Vec3& p) { return in_cylinder(p, -1.0, 1.0); };
    f.volume_form = flowcore::VolumeForm::product_measure;
    f.periodic = {false, true, false};
    f.period = {0, kTwoPi, 0};
    return f;
}

// Doubled plug field: `lower` on z in [-1,1), vertical collar on [1,1.1),
// then the orientation-reversed mirror copy of `upper` with zeta = 2.1 - z.
SampledField make_doubled_field(flowcore::FieldFn lower, flowcore::FieldFn upper) {
    SampledField f;
    f.eval = [lower = std::move(lower), upper = std::move(upper)](const Vec3& p) {
        if (p.z < kCollarLo) return lower(p);
        if (p.z < kCollarHi) return Vec3{0.0, 0.0, 1.0};
        const Vec3 q{p.x, p.y, kMirrorCenter - p.z};
        const Vec3 v = upper(q);
        return Vec3{-v.x, -v.y, v.z};
    };
    f.domain = [](const Vec3& p) { return in_cylinder(p, -1.0, kPlugTop); };
    f.volume_form = flowcore::VolumeForm::product_measure;
    f.periodic = {false, true, false};
    f.period = {0, kTwoPi, 0};
    return f;
}

struct LeafRun {
    bordism::Point2 entry, exit;
    double winding = 0;
    bool exited = false;
};

LeafRun run_leaf(const SampledField& v, double r, double theta, double z_top,
                 double t_max, double tol) {
    flowcore::IntegrateOptions opt;
    opt.t_max = t_max;
    opt.tol = tol;
    opt.store_every = 0;
    const auto traj = flowcore::integrate(v, {r, theta, -1.0}, opt);
    LeafRun out;
    out.entry = {r, theta};
    if (traj.exit_code == flowcore::ExitCode::exited_boundary &&
        traj.end().z > z_top - 1e-6) {
        out.exited = true;
        out.exit = {traj.end().x, std::fmod(traj.end().y, kTwoPi)};
        out.winding = traj.winding.y;
    }
    return out;
}

bordism::BordismRecord build_record(const SampledField& v, const char* name,
                                    double z_top, const std::vector<double>& rs,
                                    int n_samples, unsigned seed, double t_max) {
    bordism::BordismRecord rec;
    rec.name = name;
    rec.base = "annulus S1 x I";
    rec.entry_region = "annulus z=-1";
    rec.exit_region = z_top > 1.5 ? "annulus z=3.1" : "annulus z=1";
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, rs.size() / 2 - 1);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int i = 0; i < n_samples; ++i) {
        // r drawn from the sampled bands, theta uniform
        const std::size_t band = 2 * pick(rng);
        const double r = rs[band] + ur(rng) * (rs[band + 1] - rs[band]);
        const double theta = ur(rng) * kTwoPi;
        const LeafRun leaf = run_leaf(v, r, theta, z_top, t_max, 1e-11);
        if (leaf.exited)
            rec.samples.push_back({leaf.entry, leaf.exit, leaf.winding});
        else
            rec.entry_stopped.push_back(leaf.entry);
    }
    // deliberate probes on the stopped circle r = 2
    for (int k = 0; k < 8; ++k) {
        const double theta = kTwoPi * k / 8.0;
        rec.entry_stopped.push_back({2.0, theta});
        rec.exit_stopped.push_back({2.0, theta});
    }
    return rec;
}

}  // namespace

SampledField field_Ws() { return make_cyl_field(ws_eval); }

std::pair<SampledField, SampledField> fields_P1P2() {
    return {make_cyl_field(p1_eval), make_cyl_field(p2_eval)};
}

PlugResult plug_W(int n_samples, unsigned seed) {
    PlugResult out;
    out.field = make_doubled_field(ws_eval, ws_eval);
    out.record = build_record(out.field, "W", kPlugTop, {1.05, 1.95, 2.05, 2.95},
                              n_samples, seed, 2000.0);
    out.record.closed_leaf_count = 2;
    out.record.twist = bordism::Twist::untwisted;
    return out;
}

PlugResult plug_P(int n_samples, unsigned seed) {
    PlugResult out;
    out.field = make_doubled_field(p1_eval, p2_eval);
    out.record = build_record(out.field, "P", kPlugTop, {1.1, 1.6, 2.4, 2.9},
                              n_samples, seed, 2000.0);
    out.record.closed_leaf_count = 2;  // two annuli of closed leaves
    out.record.twist = bordism::Twist::integral_dehn;
    out.record.twist_k = 1;
    return out;
}

bordism::BordismRecord record_Ws(int n_samples, unsigned seed) {
    auto rec = build_record(field_Ws(), "Ws", 1.0, {1.05, 1.95, 2.05, 2.95},
                            n_samples, seed, 1000.0);
    rec.closed_leaf_count = 1;
    return rec;
}

bordism::BordismRecord plug_D_ledger(const bordism::BordismRecord& plug_p,
                                     const bordism::BordismRecord& plug_w) {
    if (plug_w.entry_stopped.empty())
        throw bordism::ledger_error(
            "plug_D_ledger: W has no stopped set to break P's closed leaves");
    // W's stopped circle must meet both closed-leaf annuli of P
    if (plug_p.closed_leaf_count != 2)
        throw bordism::ledger_error("plug_D_ledger: P must carry two annuli");
    const auto ledger = bordism::insertion_ledger(
        "P", {"P-annulus-lower", "P-annulus-upper"},
        {{plug_w, {"P-annulus-lower", "P-annulus-upper"}, ""}});
    bordism::BordismRecord d;
    d.name = "D";
    d.base = plug_p.base;
    d.entry_region = plug_p.entry_region;
    d.exit_region = plug_p.exit_region;
    d.samples = plug_p.samples;
    d.entry_stopped = plug_p.entry_stopped;
    d.exit_stopped = plug_p.exit_stopped;
    d.closed_leaf_count = ledger.final_count;
    d.twist = bordism::Twist::integral_dehn;
    d.twist_k = plug_p.twist_k;
    return d;
}

Vec3 wormhole_alpha(const Vec3& p) {
    const double u = p.x * p.x + p.y * p.y + p.z * p.z;
    if (u == 0.0) throw std::domain_error("wormhole_alpha: origin");
    const double s = 1.0 + 1.0 / u;
    return p * s;
}

SampledField wormhole_field() {
    flowcore::FluxForm w;
    // alpha^*(dx^dy) expanded in closed form, plus x dx^dz + y dy^dz
    auto su = [](const Vec3& p) {
        const double u = p.x * p.x + p.y * p.y + p.z * p.z;
        if (u == 0.0) throw std::domain_error("wormhole_field: origin");
        return std::pair<double, double>{1.0 + 1.0 / u, u};
    };
    w.c_yz = [su](const Vec3& p) {
        const auto [s, u] = su(p);
        return 2.0 * p.x * p.z * s / (u * u) + p.y;
    };
    w.c_zx = [su](const Vec3& p) {
        const auto [s, u] = su(p);
        return 2.0 * p.y * p.z * s / (u * u) - p.x;
    };
    w.c_xy = [su](const Vec3& p) {
        const auto [s, u] = su(p);
        return s * s - 2.0 * s * (p.x * p.x + p.y * p.y) / (u * u);
    };
    w.domain = [](const Vec3& p) {
        if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) return false;
        const Vec3 q = wormhole_alpha(p);
        return q.x * q.x + q.y * q.y <= 16.0 && q.z * q.z <= 16.0;
    };
    return field_from_flux(w, flowcore::VolumeForm::euclidean);
}

std::vector<std::vector<std::array<double, 2>>> f_contours(double level,
                                                           int grid) {
    using Pt = std::array<double, 2>;
    std::vector<std::pair<Pt, Pt>> segs;
    const double r0 = 1.0, r1 = 3.0, z0 = -1.0, z1 = 1.0;
    const double dr = (r1 - r0) / grid, dz = (z1 - z0) / grid;
    auto fval = [&](int i, int j) {
        return wilson_f(r0 + i * dr, z0 + j * dz) - level;
    };
    auto interp = [&](double ra, double za, double rb, double zb, double fa,
                      double fb) -> Pt {
        const double t = fa / (fa - fb);
        return {ra + t * (rb - ra), za + t * (zb - za)};
    };
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double ra = r0 + i * dr, za = z0 + j * dz;
            const double rb = ra + dr, zb = za + dz;
            const double f00 = fval(i, j), f10 = fval(i + 1, j);
            const double f01 = fval(i, j + 1), f11 = fval(i + 1, j + 1);
            std::vector<Pt> hits;
            if ((f00 < 0) != (f10 < 0)) hits.push_back(interp(ra, za, rb, za, f00, f10));
            if ((f10 < 0) != (f11 < 0)) hits.push_back(interp(rb, za, rb, zb, f10, f11));
            if ((f01 < 0) != (f11 < 0)) hits.push_back(interp(ra, zb, rb, zb, f01, f11));
            if ((f00 < 0) != (f01 < 0)) hits.push_back(interp(ra, za, ra, zb, f00, f01));
            if (hits.size() == 2) segs.push_back({hits[0], hits[1]});
            else if (hits.size() == 4) {  // saddle cell: pair along edges 0-3, 1-2
                segs.push_back({hits[0], hits[3]});
                segs.push_back({hits[1], hits[2]});
            }
        }
    }
    // greedy chaining of segments into polylines
    std::vector<std::vector<Pt>> lines;
    std::vector<char> used(segs.size(), 0);
    auto close_to = [](const Pt& a, const Pt& b) {
        return std::fabs(a[0] - b[0]) < 1e-9 && std::fabs(a[1] - b[1]) < 1e-9;
    };
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        std::vector<Pt> line{segs[i].first, segs[i].second};
        bool grown = true;
        while (grown) {
            grown = false;
            for (std::size_t j = 0; j < segs.size(); ++j) {
                if (used[j]) continue;
                if (close_to(line.back(), segs[j].first)) {
                    line.push_back(segs[j].second);
                } else if (close_to(line.back(), segs[j].second)) {
                    line.push_back(segs[j].first);
                } else if (close_to(line.front(), segs[j].second)) {
                    line.insert(line.begin(), segs[j].first);
                } else if (close_to(line.front(), segs[j].first)) {
                    line.insert(line.begin(), segs[j].second);
                } else {
                    continue;
                }
                used[j] = 1;
                grown = true;
            }
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace plugs::wilson
