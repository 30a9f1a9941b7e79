#include "plugs/denjoy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "plugs/smoothkit.hpp"
#include "plugs/sweep.hpp"

namespace plugs::denjoy {

namespace {

constexpr double kTau = 1.6180339887498948482;

double residue_mod_tau(std::int64_t n) {
    const double q = std::floor(static_cast<double>(n) / kTau);
    double r = static_cast<double>(n) - kTau * q;
    if (r >= kTau) r -= kTau;
    if (r < 0) r += kTau;
    return r;
}

double frac1(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

// retained index bound for width threshold delta: w(x) >= delta needs
// |x| <~ sqrt(1/(pi delta))
std::int64_t index_bound(double phi, double delta) {
    return static_cast<std::int64_t>(
               std::ceil(std::sqrt(1.0 / (M_PI * delta))) + std::fabs(phi)) + 2;
}

// certified equidistribution bound for the proportional tail correction:
// tail mass times the golden-rotation discrepancy envelope
double equi_bound(double tail_mass, double K) {
    return tail_mass * 3.0 * std::log(std::max(K, 8.0)) / K;
}

}  // namespace

PhiSlice::PhiSlice(double phi, double delta) : phi_(phi) {
    const std::int64_t N = index_bound(phi, delta);
    struct Tmp {
        std::int64_t n;
        double res, width;
    };
    std::vector<Tmp> tmp;
    double retained = 0;
    for (std::int64_t n = -N; n <= N; ++n) {
        const double w = smoothkit::width_w(static_cast<double>(n) - phi);
        if (w < delta) continue;
        tmp.push_back({n, residue_mod_tau(n), w});
        retained += w;
    }
    tail_mass_ = 1.0 - retained;
    eps_a_ = equi_bound(tail_mass_, static_cast<double>(N));

    // order by residue: prefix of widths is a_{n,phi}; spread the tail mass
    // proportionally to the residue position
    std::sort(tmp.begin(), tmp.end(),
              [](const Tmp& a, const Tmp& b) { return a.res < b.res; });
    entries_.reserve(tmp.size());
    double acc = 0;
    for (const auto& t : tmp) {
        const double left = acc + tail_mass_ * (t.res / kTau);
        entries_.push_back({t.n, t.res, left, t.width});
        acc += t.width;
    }
    // entries are now also sorted by left (residue order == circle order)

    const std::size_t m = entries_.size();
    pre_f_.assign(m + 1, 0.0);
    pre_absf_.assign(m + 1, 0.0);
    pre_F_.assign(m + 1, 0.0);
    const double cB = smoothkit::cumulative_B_total();
    for (std::size_t i = 0; i < m; ++i) {
        const double x = static_cast<double>(entries_[i].n) - phi_;
        const double wp = smoothkit::width_w_prime(x);
        const double w = entries_[i].width;
        pre_f_[i + 1] = pre_f_[i] + wp;
        pre_absf_[i + 1] = pre_absf_[i] + std::fabs(wp);
        pre_F_[i + 1] = pre_F_[i] + std::pow(w, 2.5) * cB;
    }
    total_f_ = pre_f_[m];
    total_absf_ = pre_absf_[m];
    total_F_ = pre_F_[m];

    // second-level values at each left_i, then the full-period totals
    q2_f_.assign(m, 0.0);
    q2_F_.assign(m, 0.0);
    const double Qb1 = smoothkit::int_cumulative_b(1.0);
    const double QB1 = smoothkit::int_cumulative_B(1.0);
    double qf = 0, qF = 0;
    for (std::size_t i = 0; i < m; ++i) {
        q2_f_[i] = qf;
        q2_F_[i] = qF;
        const double w = entries_[i].width;
        const double x = static_cast<double>(entries_[i].n) - phi_;
        const double wp = smoothkit::width_w_prime(x);
        const double w52 = std::pow(w, 2.5);
        // across the interval
        qf += pre_f_[i] * w + wp * w * Qb1;
        qF += pre_F_[i] * w + w52 * w * QB1;
        // across the following gap (P constant there)
        const double right = entries_[i].left + w;
        const double next_left = i + 1 < m ? entries_[i + 1].left : 1.0;
        qf += pre_f_[i + 1] * (next_left - right);
        qF += pre_F_[i + 1] * (next_left - right);
    }
    q_total_f_ = qf;
    q_total_F_ = qF;
}

const IntervalEntry* PhiSlice::by_n(std::int64_t n) const {
    // entries are sorted by left, not by n; binary search on residue
    const double r = residue_mod_tau(n);
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), r,
        [](const IntervalEntry& e, double v) { return e.res < v; });
    if (it != entries_.end() && it->n == n) return &*it;
    return nullptr;
}

int PhiSlice::find(double theta) const {
    const double t = frac1(theta);
    auto it = std::upper_bound(
        entries_.begin(), entries_.end(), t,
        [](double v, const IntervalEntry& e) { return v < e.left; });
    if (it == entries_.begin()) return -1;
    const int j = static_cast<int>(it - entries_.begin()) - 1;
    const auto& e = entries_[j];
    return t < e.left + e.width ? j : -1;
}

// Kind: 0 = f, 1 = |f|, 2 = F
template <int Kind>
double PhiSlice::P_eval(double x) const {
    const double k = std::floor(x);
    const double t = x - k;
    const auto& pre = Kind == 0 ? pre_f_ : (Kind == 1 ? pre_absf_ : pre_F_);
    const double total = pre.back();
    double p = k * total;
    auto it = std::upper_bound(
        entries_.begin(), entries_.end(), t,
        [](double v, const IntervalEntry& e) { return v < e.left; });
    if (it == entries_.begin()) return p;
    const std::size_t j = static_cast<std::size_t>(it - entries_.begin()) - 1;
    const auto& e = entries_[j];
    if (t >= e.left + e.width) return p + pre[j + 1];
    const double L = (t - e.left) / e.width;
    const double xn = static_cast<double>(e.n) - phi_;
    if (Kind == 2)
        return p + pre[j] + std::pow(e.width, 2.5) * smoothkit::cumulative_B(L);
    const double wp = smoothkit::width_w_prime(xn);
    const double c = Kind == 0 ? wp : std::fabs(wp);
    return p + pre[j] + c * smoothkit::cumulative_b(L);
}

template <int Kind>
double PhiSlice::Q_eval(double x) const {
    static_assert(Kind == 0 || Kind == 2);
    const auto& pre = Kind == 0 ? pre_f_ : pre_F_;
    const auto& q2 = Kind == 0 ? q2_f_ : q2_F_;
    const double total = pre.back();
    const double q_total = Kind == 0 ? q_total_f_ : q_total_F_;
    const double kf = std::floor(x);
    const double t = x - kf;
    double q = total * kf * (kf - 1.0) * 0.5 + kf * q_total + kf * total * t;
    auto it = std::upper_bound(
        entries_.begin(), entries_.end(), t,
        [](double v, const IntervalEntry& e) { return v < e.left; });
    if (it == entries_.begin()) return q;  // P == 0 below the first interval
    const std::size_t j = static_cast<std::size_t>(it - entries_.begin()) - 1;
    const auto& e = entries_[j];
    q += q2[j];
    const double w = e.width;
    const double xn = static_cast<double>(e.n) - phi_;
    const double coeff =
        Kind == 0 ? smoothkit::width_w_prime(xn) : std::pow(w, 2.5);
    if (t <= e.left + w) {
        const double L = (t - e.left) / w;
        const double itab = Kind == 0 ? smoothkit::int_cumulative_b(L)
                                      : smoothkit::int_cumulative_B(L);
        return q + pre[j] * (t - e.left) + coeff * w * itab;
    }
    const double itab1 = Kind == 0 ? smoothkit::int_cumulative_b(1.0)
                                   : smoothkit::int_cumulative_B(1.0);
    q += pre[j] * w + coeff * w * itab1;           // whole interval
    q += pre[j + 1] * (t - (e.left + w));           // gap portion
    return q;
}

double PhiSlice::P_f(double x) const { return P_eval<0>(x); }
double PhiSlice::P_absf(double x) const { return P_eval<1>(x); }
double PhiSlice::P_F(double x) const { return P_eval<2>(x); }
double PhiSlice::Q_f(double x) const { return Q_eval<0>(x); }
double PhiSlice::Q_F(double x) const { return Q_eval<2>(x); }

namespace {

std::mutex g_cache_mutex;
std::map<std::pair<double, double>, std::shared_ptr<const PhiSlice>> g_cache;

}  // namespace

std::shared_ptr<const PhiSlice> slice_at(double phi, double delta) {
    const std::pair<double, double> key{phi, delta};
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    auto slice = std::make_shared<const PhiSlice>(phi, delta);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (g_cache.size() > 4096) g_cache.clear();
    g_cache.emplace(key, slice);
    return slice;
}

std::pair<double, double> a_series(std::int64_t n, double phi, double eps) {
    if (eps <= 0) throw std::invalid_argument("a_series: eps > 0 required");
    if (n == 0) return {0.0, 0.0};  // empty half-open residue range
    // grow K until the certified bound is below eps
    double K = 1024;
    auto bound = [&](double k) {
        const double tail = smoothkit::w_tail(
            static_cast<int>(std::max(2.0, k - std::ceil(std::fabs(phi)) - 1)));
        return equi_bound(tail, k);
    };
    while (bound(K) > eps) {
        K *= 2;
        if (K > 6.7e7)
            throw std::invalid_argument("a_series: eps too small to certify");
    }
    const std::int64_t Ki = static_cast<std::int64_t>(K);
    const double rn = residue_mod_tau(n);
    double sum = 0, mass = 0;
    for (std::int64_t k = -Ki; k <= Ki; ++k) {
        const double w = smoothkit::width_w(static_cast<double>(k) - phi);
        mass += w;
        if (residue_mod_tau(k) < rn) sum += w;
    }
    sum += (1.0 - mass) * (rn / kTau);
    return {sum, bound(K)};
}

std::pair<double, double> interval_at(std::int64_t n, double phi, double delta) {
    const auto s = slice_at(phi, delta);
    const IntervalEntry* e = s->by_n(n);
    if (e) return {e->left, e->width};
    // truncated away: position from a_series at matching precision
    const double w = smoothkit::width_w(static_cast<double>(n) - phi);
    return {frac1(a_series(n, phi, 1e-8).first), w};
}

namespace {

// C^1 monotone reparametrization bump for intervals that shrink too much for
// the b-based derivative profile: flat-ended, integral 1, sup ~ 4/3
const smoothkit::AntiderivativeTable& fallback_table() {
    static const double norm = smoothkit::integrate_adaptive(
        [](double t) {
            return smoothkit::smooth_step(t / 0.25) *
                   smoothkit::smooth_step((1.0 - t) / 0.25);
        },
        0.0, 1.0, 1e-14);
    static smoothkit::AntiderivativeTable tab(
        [](double t) {
            return smoothkit::smooth_step(t / 0.25) *
                   smoothkit::smooth_step((1.0 - t) / 0.25) / norm;
        },
        1 << 14);
    return tab;
}

double fallback_g(double t) {
    static const double norm = smoothkit::integrate_adaptive(
        [](double u) {
            return smoothkit::smooth_step(u / 0.25) *
                   smoothkit::smooth_step((1.0 - u) / 0.25);
        },
        0.0, 1.0, 1e-14);
    return smoothkit::smooth_step(t / 0.25) *
           smoothkit::smooth_step((1.0 - t) / 0.25) / norm;
}

}  // namespace

DenjoyImage denjoy_map(double x, double delta) {
    const auto s = slice_at(0.0, delta);
    const auto& es = s->entries();
    const double t = frac1(x);
    const int j = s->find(t);
    if (j >= 0) {
        const auto& e = es[j];
        const IntervalEntry* img = s->by_n(e.n + 1);
        if (img) {
            const double w = e.width, W = img->width;
            const double L = (t - e.left) / w;
            if (4.0 * W > 3.0 * w) {
                // paper's profile: alpha' = 1 + ((W - w)/w) b(L)
                const double image =
                    img->left + (t - e.left) + (W - w) * smoothkit::cumulative_b(L);
                const double deriv = 1.0 + (W - w) / w * smoothkit::bump_b(L);
                return {frac1(image), deriv};
            }
            // fallback C^1 diffeomorphism with derivative 1 at the endpoints
            const double G = fallback_table().eval(L);
            const double image = img->left + W * ((w / W) * L + (1.0 - w / W) * G);
            const double deriv = (W / w) * (w / W + (1.0 - w / W) * fallback_g(L));
            return {frac1(image), deriv};
        }
        // image interval truncated away (width < delta): treat as rigid
        return {frac1(t + kTau - 1.0), 1.0};
    }
    // gap between retained intervals: map linearly onto the image gap
    auto it = std::upper_bound(
        es.begin(), es.end(), t,
        [](double v, const IntervalEntry& e) { return v < e.left; });
    const std::size_t prev =
        it == es.begin() ? es.size() - 1 : static_cast<std::size_t>(it - es.begin()) - 1;
    const std::size_t next = (prev + 1) % es.size();
    const IntervalEntry* ip = s->by_n(es[prev].n + 1);
    const IntervalEntry* in = s->by_n(es[next].n + 1);
    if (!ip || !in) return {frac1(t + kTau - 1.0), 1.0};
    const double gap_start = es[prev].left + es[prev].width;
    double gap_len = es[next].left - gap_start;
    if (gap_len <= 0) gap_len += 1.0;
    const double igap_start = ip->left + ip->width;
    double igap_len = in->left - igap_start;
    if (igap_len <= 0) igap_len += 1.0;
    double off = t - gap_start;
    if (off < 0) off += 1.0;
    return {frac1(igap_start + off * igap_len / gap_len), igap_len / gap_len};
}

double rotation_number(const std::function<double(double)>& map, double x0,
                       int iterations) {
    if (iterations < 1) throw std::invalid_argument("rotation_number: iterations");
    double x = frac1(x0), acc = 0;
    for (int i = 0; i < iterations; ++i) {
        const double y = map(x);
        double d = y - x;
        d -= std::floor(d);
        acc += d;
        x = frac1(y);
    }
    return acc / iterations;
}

std::pair<double, double> sigma_map(double theta, double phi, double delta) {
    const auto s = slice_at(phi + 1.0, delta);
    const IntervalEntry* one = s->by_n(1);
    const double a1 = one ? one->left
                          : frac1(a_series(1, phi + 1.0, 1e-8).first);
    return {frac1(theta + a1), phi + 1.0};
}

double density_f(double theta, double phi, double delta) {
    const auto s = slice_at(phi, delta);
    const int j = s->find(theta);
    if (j < 0) return 0.0;
    const auto& e = s->entries()[j];
    const double x = static_cast<double>(e.n) - phi;
    const double L = (frac1(theta) - e.left) / e.width;
    return smoothkit::width_w_prime(x) / e.width * smoothkit::bump_b(L);
}

double density_F(double theta, double phi, double delta) {
    const auto s = slice_at(phi, delta);
    const int j = s->find(theta);
    if (j < 0) return 0.0;
    const auto& e = s->entries()[j];
    const double L = (frac1(theta) - e.left) / e.width;
    return std::pow(e.width, 1.5) * smoothkit::bump_B(L);
}

HzVz hz_vz(double theta, double z, double phi, const Params& p) {
    const auto s = slice_at(phi, p.delta);
    HzVz out;
    if (std::fabs(z) < 1e-12) {
        out.h_z = 0.0;
        out.h_abs = 0.0;
        // continuity limit (C/z) int_{theta-5z}^{theta+5z} F -> 10 C F(theta)
        out.v_z = 10.0 * p.C_v * density_F(theta, phi, p.delta);
        return out;
    }
    out.h_z = 0.5 * (s->P_f(theta + z) - s->P_f(theta - z));
    const double az = std::fabs(z);
    out.h_abs = 0.5 * (s->P_absf(theta + az) - s->P_absf(theta - az));
    out.v_z = p.C_v / z * (s->P_F(theta + 5 * z) - s->P_F(theta - 5 * z));
    return out;
}

std::pair<double, double> potentials_HV(double theta, double z, double phi,
                                        const Params& p) {
    if (std::fabs(z) > 1.0) throw std::domain_error("potentials_HV: |z| <= 1");
    const auto s = slice_at(phi, p.delta);
    const double H = 0.5 * (s->Q_f(theta + z) - s->Q_f(theta - z));
    double V;
    if (std::fabs(z) < 1e-12)
        V = 10.0 * p.C_v * s->P_F(theta);
    else
        V = p.C_v / z * (s->Q_F(theta + 5 * z) - s->Q_F(theta - 5 * z));
    return {H, V};
}

namespace {

double v_theta(const PhiSlice& s, double theta, double z, double C) {
    // -dV/dz; V is even in z so the value is odd and vanishes at 0
    if (std::fabs(z) < 1e-12) return 0.0;
    if (std::fabs(z) >= 1e-3) {
        // closed form; safe away from z = 0 where the two terms cancel
        return C / (z * z) * (s.Q_F(theta + 5 * z) - s.Q_F(theta - 5 * z)) -
               5 * C / z * (s.P_F(theta + 5 * z) + s.P_F(theta - 5 * z));
    }
    const double h = 1e-5 * (1.0 + std::fabs(z));
    auto V = [&](double zz) {
        if (std::fabs(zz) < 1e-12) return 10.0 * C * s.P_F(theta);
        return C / zz * (s.Q_F(theta + 5 * zz) - s.Q_F(theta - 5 * zz));
    };
    return -(V(z + h) - V(z - h)) / (2 * h);
}

double h_theta(const PhiSlice& s, double theta, double z) {
    return -0.5 * (s.P_f(theta + z) + s.P_f(theta - z));
}

}  // namespace

VPFields fields_hvE(const Params& p) {
    using flowcore::SampledField;
    using flowcore::Vec3;
    const double C = p.C_v;
    const double delta = p.delta;
    auto domain = [](const Vec3& q) { return q.z >= -1.0 && q.z <= 1.0; };

    VPFields out;
    out.h.eval = [delta](const Vec3& q) {
        const auto s = slice_at(q.y, delta);
        return Vec3{h_theta(*s, q.x, q.z),
                    0.0,
                    0.5 * (s->P_f(q.x + q.z) - s->P_f(q.x - q.z))};
    };
    out.v.eval = [delta, C](const Vec3& q) {
        const auto s = slice_at(q.y, delta);
        const double vz =
            std::fabs(q.z) < 1e-12
                ? 10.0 * C * density_F(q.x, q.y, delta)
                : C / q.z * (s->P_F(q.x + 5 * q.z) - s->P_F(q.x - 5 * q.z));
        return Vec3{v_theta(*s, q.x, q.z, C), 0.0, vz};
    };
    auto hv = out.h.eval;
    auto vv = out.v.eval;
    out.Ep.eval = [hv, vv](const Vec3& q) {
        const Vec3 a = hv(q), b = vv(q);
        return Vec3{a.x + b.x, 1.0, a.z + b.z};
    };
    for (SampledField* f : {&out.h, &out.v, &out.Ep}) {
        f->domain = domain;
        f->periodic = {true, false, false};
        f->period = {1.0, 0.0, 0.0};
        f->volume_form = flowcore::VolumeForm::product_measure;
    }
    return out;
}

namespace {

PropertyIvReport property_iv_impl(const Params& p, const GridSpec& g,
                                  bool parallel) {
    PropertyIvReport rep;
    rep.eps_a = slice_at(0.0, p.delta)->eps_a();
    // truncation bound on the h side: unretained intervals contribute at most
    // the telescoped tail of |w'|
    const double K = std::sqrt(1.0 / (M_PI * p.delta));
    rep.tail_bound = 2.0 * smoothkit::width_w(K - 2.0);

    struct Cell {
        double margin;
        int kind;  // 0 single, 1 main, 2 exceptional
        double pt[3];
    };
    const std::size_t total = static_cast<std::size_t>(g.n_theta) * g.n_z * g.n_phi;
    std::vector<Cell> cells(total);
    auto eval_cell = [&](std::size_t idx) {
        const std::size_t it = idx % g.n_theta;
        const std::size_t iz = (idx / g.n_theta) % g.n_z;
        const std::size_t ip = idx / (static_cast<std::size_t>(g.n_theta) * g.n_z);
        const double theta = (it + 0.5) / g.n_theta;
        const double z = g.z_min * std::pow(g.z_max / g.z_min,
                                            g.n_z == 1 ? 0.0 : double(iz) / (g.n_z - 1));
        const double phi = double(ip) / g.n_phi;
        const auto s = slice_at(phi, p.delta);
        const auto hv = hz_vz(theta, z, phi, p);
        Cell c;
        c.margin = hv.v_z - hv.h_abs;
        const int ja = s->find(theta - z), jb = s->find(theta + z);
        if (ja >= 0 && ja == jb) {
            c.kind = 0;  // I_h inside a single interval
        } else {
            // main case unless an endpoint of I_v coincides (to within
            // roundoff) with an interval endpoint
            c.kind = 1;
            for (double end : {theta - 5 * z, theta + 5 * z}) {
                const int j = s->find(end);
                if (j < 0) continue;
                const auto& e = s->entries()[j];
                const double t = end - std::floor(end);
                if (std::min(t - e.left, e.left + e.width - t) < 1e-12)
                    c.kind = 2;
            }
        }
        c.pt[0] = theta;
        c.pt[1] = z;
        c.pt[2] = phi;
        cells[idx] = c;
    };
    if (parallel)
        parallel_for(total, eval_cell);
    else
        serial_for(total, eval_cell);

    rep.n_points = total;
    rep.min_margin = 1e300;
    for (const auto& c : cells) {
        if (c.kind == 0) ++rep.case_single_interval;
        else if (c.kind == 1) ++rep.case_main;
        else ++rep.case_exceptional;
        if (c.margin < rep.min_margin) {
            rep.min_margin = c.margin;
            rep.witness[0] = c.pt[0];
            rep.witness[1] = c.pt[1];
            rep.witness[2] = c.pt[2];
        }
    }
    rep.pass = rep.min_margin > rep.tail_bound;
    return rep;
}

}  // namespace

PropertyIvReport verify_property_iv(const Params& p, const GridSpec& g) {
    return property_iv_impl(p, g, true);
}
PropertyIvReport verify_property_iv_serial(const Params& p, const GridSpec& g) {
    return property_iv_impl(p, g, false);
}

Calibration calibrate_C(const GridSpec& g, double delta) {
    Params unit;
    unit.C_v = 1.0;
    unit.delta = delta;
    Calibration cal;
    cal.ratio_max = 0.0;
    for (int ip = 0; ip < g.n_phi; ++ip) {
        const double phi = double(ip) / g.n_phi;
        for (int iz = 0; iz < g.n_z; ++iz) {
            const double z = g.z_min * std::pow(g.z_max / g.z_min,
                                                g.n_z == 1 ? 0.0 : double(iz) / (g.n_z - 1));
            for (int it = 0; it < g.n_theta; ++it) {
                const double theta = (it + 0.5) / g.n_theta;
                const auto hv = hz_vz(theta, z, phi, unit);
                if (hv.h_abs <= 0.0) continue;
                if (hv.v_z <= 0.0)
                    throw calibration_error("calibrate_C: v_z <= 0 at a grid point");
                const double ratio = hv.h_abs / hv.v_z;
                if (ratio > cal.ratio_max) {
                    cal.ratio_max = ratio;
                    cal.witness[0] = theta;
                    cal.witness[1] = z;
                    cal.witness[2] = phi;
                }
            }
        }
    }
    if (cal.ratio_max <= 0.0 || cal.ratio_max > 1e6)
        throw calibration_error("calibrate_C: no feasible constant below 1e6");
    cal.C_v = 2.0 * cal.ratio_max;
    return cal;
}

}  // namespace plugs::denjoy
