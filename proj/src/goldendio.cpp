#include "plugs/goldendio.hpp"

#include <cmath>
#include <algorithm>
#include <array>

namespace plugs::goldendio {

namespace {

using i128 = __int128;

constexpr std::int64_t kCoeffLimit = 4'800'000'000'000'000'000LL;  // < 2^63 / 1.9

std::int64_t checked(i128 v, const char* what) {
    if (v > kCoeffLimit || v < -kCoeffLimit) throw overflow_error(what);
    return static_cast<std::int64_t>(v);
}

constexpr double kTau = 1.6180339887498948482;

}  // namespace

GoldenNumber::GoldenNumber(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
    if (a > kCoeffLimit || a < -kCoeffLimit || b > kCoeffLimit || b < -kCoeffLimit)
        throw overflow_error("GoldenNumber coefficient out of range");
}

GoldenNumber GoldenNumber::operator+(const GoldenNumber& o) const {
    return {checked(i128(a_) + o.a_, "add"), checked(i128(b_) + o.b_, "add")};
}

GoldenNumber GoldenNumber::operator-(const GoldenNumber& o) const {
    return {checked(i128(a_) - o.a_, "sub"), checked(i128(b_) - o.b_, "sub")};
}

GoldenNumber GoldenNumber::operator-() const { return {-a_, -b_}; }

GoldenNumber GoldenNumber::operator*(const GoldenNumber& o) const {
    // (a + b tau)(c + d tau) = ac + bd + (ad + bc + bd) tau
    const i128 a = a_, b = b_, c = o.a_, d = o.b_;
    return {checked(a * c + b * d, "mul"), checked(a * d + b * c + b * d, "mul")};
}

int GoldenNumber::sign() const {
    // a + b tau = (s + b sqrt5)/2 with s = 2a + b.
    const i128 s = i128(2) * a_ + b_;
    const i128 b = b_;
    if (s == 0 && b == 0) return 0;
    if (s >= 0 && b >= 0) return 1;
    if (s <= 0 && b <= 0) return -1;
    const i128 s2 = s * s, b5 = 5 * b * b;
    if (b > 0) return b5 > s2 ? 1 : (b5 < s2 ? -1 : 0);
    return s2 > b5 ? 1 : (s2 < b5 ? -1 : 0);
}

double GoldenNumber::to_double() const {
    return static_cast<double>(a_) + static_cast<double>(b_) * kTau;
}

std::string GoldenNumber::str() const {
    return std::to_string(a_) + (b_ >= 0 ? "+" : "") + std::to_string(b_) + "t";
}

GoldenNumber GoldenNumber::tau_pow_neg(int n) {
    if (n < 0) throw std::invalid_argument("tau_pow_neg: n >= 0");
    if (n == 0) return {1, 0};
    const std::int64_t fn = fibonacci(n), fn1 = fibonacci(n - 1);
    if (n % 2 == 0) return {fn, -fn1};
    return {-fn, fn1};
}

std::int64_t fibonacci(int n) {
    if (n < 0 || n > 89) throw std::invalid_argument("fibonacci: n in [0,89]");
    std::int64_t a = 1, b = 1;  // F_0, F_1
    for (int i = 0; i < n; ++i) {
        const std::int64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t floor_div_tau(const GoldenNumber& g) {
    // g / tau = g * (tau - 1) = (b - a) + a tau, exactly.
    const GoldenNumber q{checked(i128(g.b()) - g.a(), "divtau"), g.a()};
    std::int64_t k = static_cast<std::int64_t>(std::floor(q.to_double()));
    // verify k <= q < k+1 exactly, adjusting against float error
    while ((q - GoldenNumber{k, 0}).sign() < 0) --k;
    while ((q - GoldenNumber{k + 1, 0}).sign() >= 0) ++k;
    return k;
}

CircleTau::CircleTau(const GoldenNumber& g) {
    const std::int64_t k = floor_div_tau(g);
    v_ = g - GoldenNumber{0, 1} * GoldenNumber{k, 0};
}

CircleTau mod_tau(std::int64_t n) { return CircleTau(GoldenNumber{n, 0}); }

GoldenNumber circle_distance(const CircleTau& x, const CircleTau& y) {
    const CircleTau diff(x.value() - y.value());
    const GoldenNumber r = diff.value();
    const GoldenNumber other = GoldenNumber::tau() - r;
    return r < other ? r : other;
}

bool in_arc(const CircleTau& x, const CircleTau& a, const CircleTau& b) {
    const GoldenNumber r = CircleTau(x.value() - a.value()).value();
    const GoldenNumber len = CircleTau(b.value() - a.value()).value();
    return r.sign() > 0 && r < len;
}

FibDistanceResult fib_distance_check(int n) {
    if (n < 1) throw std::invalid_argument("fib_distance_check: n >= 1");
    const CircleTau res = mod_tau(fibonacci(n));
    const GoldenNumber d = circle_distance(res, CircleTau(GoldenNumber{}));
    const bool ok = d == GoldenNumber::tau_pow_neg(n);
    // residue itself below tau/2 means approach from above 0
    const GoldenNumber twice = res.value() + res.value();
    const int side = twice < GoldenNumber::tau() ? 1 : -1;
    return {ok, side};
}

bool fib_optimal_check(int n) {
    const std::int64_t fn = fibonacci(n);
    if (fn > 100000) throw std::invalid_argument("fib_optimal_check: F_n <= 1e5");
    const GoldenNumber dn =
        circle_distance(mod_tau(fn), CircleTau(GoldenNumber{}));
    for (std::int64_t p = 1; p < fn; ++p) {
        const GoldenNumber dp =
            circle_distance(mod_tau(p), CircleTau(GoldenNumber{}));
        if (dp <= dn) return false;
    }
    return true;
}

std::vector<std::int64_t> enum_Z(const CircleTau& a, const CircleTau& b,
                                 std::int64_t N) {
    if (a == b) throw std::invalid_argument("enum_Z: degenerate arc");
    std::vector<std::int64_t> out;
    for (std::int64_t n = -N; n <= N; ++n)
        if (in_arc(mod_tau(n), a, b)) out.push_back(n);
    return out;
}

GapSurveyResult gap_ratio_survey(
    const std::vector<std::pair<CircleTau, CircleTau>>& arcs, std::int64_t N) {
    GapSurveyResult res;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto z = enum_Z(arcs[i].first, arcs[i].second, N);
        if (z.size() < 2) {
            ++res.skipped;
            continue;
        }
        std::int64_t gmin = z[1] - z[0], gmax = gmin;
        for (std::size_t j = 1; j + 1 < z.size(); ++j) {
            const std::int64_t g = z[j + 1] - z[j];
            gmin = std::min(gmin, g);
            gmax = std::max(gmax, g);
        }
        const double ratio = static_cast<double>(gmax) / static_cast<double>(gmin);
        if (ratio > res.max_ratio) {
            res.max_ratio = ratio;
            res.witness_arc = i;
        }
    }
    return res;
}

SumRatio352 sum_ratio_352(const CircleTau& a, const CircleTau& b, std::int64_t N,
                          double phi) {
    if (in_arc(CircleTau(GoldenNumber{}), a, b))
        throw std::invalid_argument("sum_ratio_352: 0 in Z(a,b)");
    double s3 = 0, s5 = 0, s2 = 0, w32 = 0, w52 = 0, w1 = 0;
    for (std::int64_t n = -N; n <= N; ++n) {
        if (n == 0) continue;
        if (!in_arc(mod_tau(n), a, b)) continue;
        const double an = std::fabs(static_cast<double>(n));
        s3 += 1.0 / (an * an * an);
        s5 += 1.0 / (an * an * an * an * an);
        s2 += 1.0 / (an * an);
        const double w = (std::atan(n - phi + 1.0) - std::atan(n - phi)) / M_PI;
        w32 += std::pow(w, 1.5);
        w52 += std::pow(w, 2.5);
        w1 += w;
    }
    if (s2 == 0.0) return {0, 0, 0, 0};
    return {s3, s5 / s2, w32, w52 / w1};
}

BetweenResult find_between(std::int64_t n1, std::int64_t n2, std::int64_t N) {
    if (n1 == n2) throw std::invalid_argument("find_between: n1 == n2");
    const CircleTau a = mod_tau(n1), b = mod_tau(n2);
    for (std::int64_t m = 0; m <= N; ++m) {
        for (const std::int64_t n3 : {m, -m}) {
            if (n3 == 0 && m != 0) continue;
            if (in_arc(mod_tau(n3), a, b)) {
                const double mx = static_cast<double>(
                    std::max(std::llabs(n1), std::llabs(n2)));
                return {n3, static_cast<double>(std::llabs(n3)) / mx};
            }
        }
    }
    throw search_error("find_between: no integer residue in arc within [-N,N]");
}

}  // namespace plugs::goldendio
