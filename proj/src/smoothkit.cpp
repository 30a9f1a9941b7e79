#include "plugs/smoothkit.hpp"

#include <cmath>
#include <mutex>

namespace plugs::smoothkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// g(t) = exp(-1/t) for t > 0, flat at 0.
double flat_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double flat_exp_prime(double t) {
    return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0;
}

// b is a plateau bump: smooth flanks on [1/3, 2/5] and [3/5, 2/3], constant
// plateau on [2/5, 3/5], scaled so the integral is exactly 1.  The flank
// integral is exactly half the flank width (psi(t)+psi(1-t)=1), so the
// normalization constant 15/4 is closed-form and the peak is 3.75 < 4.
constexpr double kFlankW = 1.0 / 15.0;
constexpr double kBPeak = 15.0 / 4.0;

}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g = flat_exp(t);
    return g / (g + flat_exp(1.0 - t));
}

double smooth_step_prime(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double g = flat_exp(t), h = flat_exp(1.0 - t);
    const double gp = flat_exp_prime(t), hp = flat_exp_prime(1.0 - t);
    const double s = g + h;
    // d/dt [g/(g+h)] with h' = -hp by the chain rule
    return (gp * s - g * (gp - hp)) / (s * s);
}

double bump_b(double x) {
    if (x < 0.0 || x > 1.0) throw domain_error("bump_b: x outside [0,1]");
    if (x <= 1.0 / 3.0 || x >= 2.0 / 3.0) return 0.0;
    if (x < 2.0 / 5.0) return kBPeak * smooth_step((x - 1.0 / 3.0) / kFlankW);
    if (x > 3.0 / 5.0) return kBPeak * smooth_step((2.0 / 3.0 - x) / kFlankW);
    return kBPeak;
}

double bump_B(double x) {
    if (x < 0.0 || x > 1.0) throw domain_error("bump_B: x outside [0,1]");
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double beta = std::exp(1.0 - 1.0 / (4.0 * x * (1.0 - x)));
    return bump_b(x) + beta;
}

double transition_e(double x) {
    if (x < -1.0 || x > 1.0) throw domain_error("transition_e: x outside [-1,1]");
    const double a = std::fabs(x);
    if (a >= 2.0 / 3.0) return 0.0;
    if (a <= 1.0 / 3.0) return 1.0;
    return smooth_step(2.0 - 3.0 * a);
}

double transition_e_prime(double x) {
    const double a = std::fabs(x);
    if (a >= 2.0 / 3.0 || a <= 1.0 / 3.0) return 0.0;
    const double d = -3.0 * smooth_step_prime(2.0 - 3.0 * a);
    return x > 0.0 ? d : -d;
}

double odd_o(double x) {
    if (x < -1.0 || x > 1.0) throw domain_error("odd_o: x outside [-1,1]");
    if (x == 0.0) return 0.0;
    const double v = std::exp(1.0 - 1.0 / (x * x));
    return x > 0.0 ? v : -v;
}

double odd_o_prime(double x) {
    if (x == 0.0) return 0.0;
    const double a = std::fabs(x);
    return 2.0 * std::exp(1.0 - 1.0 / (x * x)) / (a * a * a);
}

double eval_profile(SmoothProfile p, double x) {
    switch (p) {
        case SmoothProfile::bumpB_small: return bump_b(x);
        case SmoothProfile::bumpB_big: return bump_B(x);
        case SmoothProfile::transition_e: return transition_e(x);
        case SmoothProfile::odd_o: return odd_o(x);
        case SmoothProfile::width_w: return width_w(x);
    }
    throw domain_error("eval_profile: bad profile");
}

double width_w(double x) {
    return (std::atan(x + 1.0) - std::atan(x)) / kPi;
}

double width_w_prime(double x) {
    const double u = x + 1.0;
    return (1.0 / (1.0 + u * u) - 1.0 / (1.0 + x * x)) / kPi;
}

double w_tail(int K) {
    if (K < 1) throw domain_error("w_tail: K must be >= 1");
    // sum_{k>=K} w(k) telescopes to (1/pi)(pi/2 - atan K); likewise on the left.
    const double right = (kPi / 2.0 - std::atan(static_cast<double>(K))) / kPi;
    const double left = (std::atan(1.0 - static_cast<double>(K)) + kPi / 2.0) / kPi;
    return right + left;
}

AntiderivativeTable::AntiderivativeTable(const std::function<double(double)>& f,
                                         int cells) {
    h_ = 1.0 / cells;
    cum_.resize(cells + 1);
    deriv_.resize(cells + 1);
    cum_[0] = 0.0;
    deriv_[0] = f(0.0);
    for (int i = 0; i < cells; ++i) {
        const double a = i * h_;
        const double fm = f(a + 0.5 * h_);
        deriv_[i + 1] = f(a + h_);
        cum_[i + 1] = cum_[i] + h_ / 6.0 * (deriv_[i] + 4.0 * fm + deriv_[i + 1]);
    }
}

double AntiderivativeTable::eval(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return cum_.back();
    const int n = static_cast<int>(cum_.size()) - 1;
    int i = static_cast<int>(x / h_);
    if (i >= n) i = n - 1;
    const double t = (x - i * h_) / h_;
    // cubic Hermite with exact endpoint derivatives
    const double y0 = cum_[i], y1 = cum_[i + 1];
    const double m0 = deriv_[i] * h_, m1 = deriv_[i + 1] * h_;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
}

namespace {

const AntiderivativeTable& table_b() {
    static AntiderivativeTable t([](double x) { return bump_b(x); }, 1 << 16);
    return t;
}
const AntiderivativeTable& table_B() {
    static AntiderivativeTable t([](double x) { return bump_B(x); }, 1 << 16);
    return t;
}
const AntiderivativeTable& table_Qb() {
    static AntiderivativeTable t([](double x) { return table_b().eval(x); }, 1 << 14);
    return t;
}
const AntiderivativeTable& table_QB() {
    static AntiderivativeTable t([](double x) { return table_B().eval(x); }, 1 << 14);
    return t;
}

}  // namespace

double cumulative_b(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw domain_error("cumulative_b: x outside [0,1]");
    return table_b().eval(x);
}

double cumulative_B(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw domain_error("cumulative_B: x outside [0,1]");
    return table_B().eval(x);
}

double cumulative_B_total() { return table_B().total(); }

double int_cumulative_b(double x) { return table_Qb().eval(x); }
double int_cumulative_B(double x) { return table_QB().eval(x); }

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double fm, double whole, double tol,
             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1) +
           adapt(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(f, a, fa, b, fb, fm);
    return adapt(f, a, fa, b, fb, fm, whole, tol, 48);
}

}  // namespace plugs::smoothkit
