#include "plugs/flowcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plugs/sweep.hpp"

namespace plugs::flowcore {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

SampledField field_from_flux(const FluxForm& w, VolumeForm mu) {
    SampledField f;
    f.volume_form = mu;
    f.domain = w.domain;
    f.eval = [w](const Vec3& p) { return w.components(p); };
    return f;
}

Field2D hamiltonian_2d(const std::function<double(double, double)>& f, double h) {
    return [f, h](double a, double b) -> std::array<double, 2> {
        const double fa = (f(a + h, b) - f(a - h, b)) / (2 * h);
        const double fb = (f(a, b + h) - f(a, b - h)) / (2 * h);
        return {-fb, fa};
    };
}

Field2D hamiltonian_2d_exact(
    const std::function<std::array<double, 2>(double, double)>& grad) {
    return [grad](double a, double b) -> std::array<double, 2> {
        const auto g = grad(a, b);
        return {-g[1], g[0]};
    };
}

namespace {

DivergenceReport div_reduce(const std::vector<double>& divs,
                            const std::vector<double>& mags,
                            const std::vector<Vec3>& points) {
    DivergenceReport r;
    r.n_points = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double rel = std::fabs(divs[i]) / (1.0 + mags[i]);
        if (std::fabs(divs[i]) > r.max_abs_div) r.max_abs_div = std::fabs(divs[i]);
        if (rel > r.max_rel_div) {
            r.max_rel_div = rel;
            r.worst_point = points[i];
        }
    }
    return r;
}

void div_point(const SampledField& v, const Vec3& p, double h, double& div,
               double& mag) {
    if (!v.domain(p)) throw std::domain_error("divergence_check: point outside domain");
    double d = 0;
    for (int c = 0; c < 3; ++c) {
        // central stencils of order 6, 4 or 2, using the widest one whose
        // sample points stay inside the domain
        Vec3 p1 = p, m1 = p, p2 = p, m2 = p, p3 = p, m3 = p;
        p1[c] += h;
        m1[c] -= h;
        p2[c] += 2 * h;
        m2[c] -= 2 * h;
        p3[c] += 3 * h;
        m3[c] -= 3 * h;
        if (v.domain(p3) && v.domain(m3)) {
            d += (v.eval(p3)[c] - v.eval(m3)[c] -
                  9 * (v.eval(p2)[c] - v.eval(m2)[c]) +
                  45 * (v.eval(p1)[c] - v.eval(m1)[c])) /
                 (60 * h);
        } else if (v.domain(p2) && v.domain(m2)) {
            d += (-v.eval(p2)[c] + 8 * v.eval(p1)[c] - 8 * v.eval(m1)[c] +
                  v.eval(m2)[c]) /
                 (12 * h);
        } else {
            d += (v.eval(p1)[c] - v.eval(m1)[c]) / (2 * h);
        }
    }
    div = d;
    mag = v.eval(p).norm();
}

}  // namespace

DivergenceReport divergence_check(const SampledField& v,
                                  const std::vector<Vec3>& points, double h) {
    std::vector<double> divs(points.size()), mags(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        div_point(v, points[i], h, divs[i], mags[i]);
    });
    return div_reduce(divs, mags, points);
}

DivergenceReport divergence_check_serial(const SampledField& v,
                                         const std::vector<Vec3>& points,
                                         double h) {
    std::vector<double> divs(points.size()), mags(points.size());
    serial_for(points.size(), [&](std::size_t i) {
        div_point(v, points[i], h, divs[i], mags[i]);
    });
    return div_reduce(divs, mags, points);
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct DenseStep {
    Vec3 y0, y1, f0, f1;
    double t0 = 0, h = 0;
    Vec3 at(double s) const {  // s in [0,1], cubic Hermite
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        Vec3 out;
        for (int c = 0; c < 3; ++c)
            out[c] = h00 * y0[c] + h10 * h * f0[c] + h01 * y1[c] + h11 * h * f1[c];
        return out;
    }
};

class Stepper {
  public:
    Stepper(const SampledField& v, const Vec3& x0, double tol)
        : v_(v), y_(x0), f_(v.eval(x0)), tol_(tol) {
        const double fn = f_.norm();
        h_ = std::min(0.01, tol / (fn + 1e-12) * 100);
        h_ = std::max(h_, 1e-8);
    }

    double t() const { return t_; }
    const Vec3& y() const { return y_; }

    // One accepted adaptive step, not exceeding t_limit.  Evaluates the field
    // outside the declared domain freely (fields extend smoothly a little past
    // their domain); the caller handles boundary events via the dense output.
    DenseStep step(double t_limit) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            double h = std::min(h_, t_limit - t_);
            if (h <= 0) h = h_;
            Vec3 k1 = f_;
            Vec3 k2 = v_.eval(axp(y_, h, {{a21, 0, 0, 0, 0, 0}}, k1));
            Vec3 k3 = v_.eval(comb(y_, h, {a31, a32}, {k1, k2}));
            Vec3 k4 = v_.eval(comb(y_, h, {a41, a42, a43}, {k1, k2, k3}));
            Vec3 k5 = v_.eval(comb(y_, h, {a51, a52, a53, a54}, {k1, k2, k3, k4}));
            Vec3 k6 =
                v_.eval(comb(y_, h, {a61, a62, a63, a64, a65}, {k1, k2, k3, k4, k5}));
            Vec3 y1 = comb(y_, h, {b1, 0, b3, b4, b5, b6}, {k1, k2, k3, k4, k5, k6});
            Vec3 k7 = v_.eval(y1);
            double err = 0;
            for (int c = 0; c < 3; ++c) {
                const double e = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] +
                                      e5 * k5[c] + e6 * k6[c] + e7 * k7[c]);
                const double sc = tol_ * (1.0 + std::fabs(y_[c]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / 3.0);
            const double fac =
                std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                DenseStep d{y_, y1, k1, k7, t_, h};
                t_ += h;
                y_ = y1;
                f_ = k7;
                h_ = std::min(fac * h, 1.0);
                return d;
            }
            h_ = fac * h;
            if (h_ < 1e-14)
                throw integration_error("integrate: step size underflow");
        }
        throw integration_error("integrate: no accepted step after 200 tries");
    }

  private:
    static Vec3 axp(const Vec3& y, double h, const std::array<double, 6>& a,
                    const Vec3& k1) {
        return y + k1 * (h * a[0]);
    }
    template <std::size_t N>
    static Vec3 comb(const Vec3& y, double h, const double (&a)[N],
                     const std::array<Vec3, N>& ks) {
        Vec3 out = y;
        for (std::size_t i = 0; i < N; ++i) out = out + ks[i] * (h * a[i]);
        return out;
    }
    template <std::size_t N>
    static Vec3 comb(const Vec3& y, double h, const double (&a)[N],
                     std::initializer_list<Vec3> ks) {
        Vec3 out = y;
        std::size_t i = 0;
        for (const Vec3& k : ks) out = out + k * (h * a[i++]);
        return out;
    }

    const SampledField& v_;
    Vec3 y_;
    Vec3 f_;
    double t_ = 0;
    double h_ = 1e-4;
    double tol_;
};

double periodic_dist2(const Vec3& a, const Vec3& b, const SampledField& v) {
    double d2 = 0;
    for (int c = 0; c < 3; ++c) {
        double d = a[c] - b[c];
        if (v.periodic[c] && v.period[c] > 0) {
            d = std::remainder(d, v.period[c]);
        }
        d2 += d * d;
    }
    return d2;
}

}  // namespace

Trajectory integrate(const SampledField& v, const Vec3& x0,
                     const IntegrateOptions& opt) {
    if (!v.domain(x0)) throw std::domain_error("integrate: x0 outside domain");
    Trajectory traj;
    traj.samples.push_back({0.0, x0});
    Stepper st(v, x0, opt.tol);
    std::size_t steps = 0;
    while (st.t() < opt.t_max) {
        if (++steps > opt.max_steps)
            throw integration_error("integrate: max step count exceeded");
        const DenseStep d = st.step(opt.t_max);

        if (!v.domain(d.y1)) {
            // locate boundary crossing by bisection on the dense output
            double lo = 0, hi = 1;
            for (int it = 0; it < 80 && (hi - lo) * d.h > 1e-13; ++it) {
                const double m = 0.5 * (lo + hi);
                (v.domain(d.at(m)) ? lo : hi) = m;
            }
            const double s = 0.5 * (lo + hi);
            traj.samples.push_back({d.t0 + s * d.h, d.at(s)});
            traj.exit_code = ExitCode::exited_boundary;
            traj.total_time = d.t0 + s * d.h;
            break;
        }

        if (opt.detect_closed && st.t() > opt.closed_t_min) {
            // refine the distance-to-start minimum inside the step: coarse
            // scan for the argmin, then ternary search around it
            double best_s = 0, best_d = periodic_dist2(d.at(0), x0, v);
            for (int i = 1; i <= 8; ++i) {
                const double s = i / 8.0;
                const double cur = periodic_dist2(d.at(s), x0, v);
                if (cur < best_d) { best_d = cur; best_s = s; }
            }
            {
                double a = std::max(0.0, best_s - 0.125);
                double b = std::min(1.0, best_s + 0.125);
                for (int it = 0; it < 100; ++it) {
                    const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
                    if (periodic_dist2(d.at(m1), x0, v) <
                        periodic_dist2(d.at(m2), x0, v))
                        b = m2;
                    else
                        a = m1;
                }
                const double s = 0.5 * (a + b);
                if (periodic_dist2(d.at(s), x0, v) <
                        opt.closed_tol * opt.closed_tol &&
                    d.t0 + s * d.h > opt.closed_t_min) {
                    traj.samples.push_back({d.t0 + s * d.h, d.at(s)});
                    traj.exit_code = ExitCode::closed_detected;
                    traj.closed_period = d.t0 + s * d.h;
                    traj.total_time = traj.closed_period;
                    break;
                }
            }
        }

        if (opt.store_every > 0 && steps % opt.store_every == 0)
            traj.samples.push_back({st.t(), st.y()});
        traj.total_time = st.t();
        if (st.t() >= opt.t_max) {
            traj.exit_code = ExitCode::time_exhausted;
            if (traj.samples.back().first != st.t())
                traj.samples.push_back({st.t(), st.y()});
            break;
        }
    }
    const Vec3& s0 = traj.samples.front().second;
    const Vec3& s1 = traj.samples.back().second;
    for (int c = 0; c < 3; ++c)
        traj.winding[c] = v.periodic[c] ? s1[c] - s0[c] : 0.0;
    return traj;
}

std::string trajectory_csv(const Trajectory& t,
                           const std::array<bool, 3>& periodic) {
    std::ostringstream os;
    os.precision(17);
    os << "t,x,y,z";
    int nw = 0;
    for (int c = 0; c < 3; ++c)
        if (periodic[c]) os << ",winding" << ++nw;
    os << "\r\n";
    for (const auto& [time, p] : t.samples) {
        os << time << "," << p.x << "," << p.y << "," << p.z;
        for (int c = 0; c < 3; ++c)
            if (periodic[c]) os << "," << (p[c] - t.samples.front().second[c]);
        os << "\r\n";
    }
    return os.str();
}

std::optional<ClosedOrbit> detect_closed_orbit(const SampledField& v,
                                               const Vec3& seed,
                                               const SectionSpec& section,
                                               double tol, int max_returns,
                                               double tol_integrate) {
    if (!v.domain(seed)) throw std::domain_error("detect_closed_orbit: bad seed");
    Stepper st(v, seed, tol_integrate);
    std::vector<std::pair<double, Vec3>> crossings;
    const int c = section.coord;
    double gp = seed[c] - section.value;
    const double t_budget = 1e9;
    std::size_t guard = 0;
    while (static_cast<int>(crossings.size()) <= max_returns) {
        if (++guard > 5'000'000) return std::nullopt;
        DenseStep d;
        try {
            d = st.step(t_budget);
        } catch (const integration_error&) {
            return std::nullopt;
        }
        if (!v.domain(d.y1)) return std::nullopt;  // orbit leaves: no closed orbit
        const double gn = d.y1[c] - section.value;
        const bool crossing =
            section.direction >= 0 ? (gp < 0 && gn >= 0) : (gp > 0 && gn <= 0);
        if (crossing) {
            double lo = 0, hi = 1;
            for (int it = 0; it < 80 && (hi - lo) * d.h > 1e-13; ++it) {
                const double m = 0.5 * (lo + hi);
                const double gm = d.at(m)[c] - section.value;
                const bool before = section.direction >= 0 ? gm < 0 : gm > 0;
                (before ? lo : hi) = m;
            }
            const double s = 0.5 * (lo + hi);
            const double tc = d.t0 + s * d.h;
            const Vec3 pc = d.at(s);
            for (const auto& [tp, pp] : crossings) {
                if (std::sqrt(periodic_dist2(pc, pp, v)) < tol)
                    return ClosedOrbit{tc - tp, pp};
            }
            crossings.push_back({tc, pc});
        }
        gp = gn;
    }
    return std::nullopt;
}

SampledField linear_t3_flow(double r1, double r2, double r3) {
    if (r1 == 0 && r2 == 0 && r3 == 0)
        throw std::invalid_argument("linear_t3_flow: zero vector");
    SampledField f;
    f.eval = [r1, r2, r3](const Vec3&) { return Vec3{r1, r2, r3}; };
    f.domain = [](const Vec3&) { return true; };
    f.periodic = {true, true, true};
    f.period = {1.0, 1.0, 1.0};
    return f;
}

SampledField SuspensionFlow::field() const {
    SampledField f;
    auto dom = domain;
    f.eval = [](const Vec3&) { return Vec3{0, 0, 1}; };
    f.domain = [dom](const Vec3& p) {
        return dom({p.x, p.y}) && p.z >= 0.0 && p.z < 1.0;
    };
    return f;
}

std::optional<int> SuspensionFlow::finite_orbit(const std::array<double, 2>& p,
                                                int max_iters, double tol) const {
    std::array<double, 2> q = p;
    for (int i = 1; i <= max_iters; ++i) {
        q = sigma(q);
        if (!domain(q)) throw map_error("suspension: sigma left the domain");
        const double d = std::hypot(q[0] - p[0], q[1] - p[1]);
        if (d < tol) return i;
    }
    return std::nullopt;
}

}  // namespace plugs::flowcore
