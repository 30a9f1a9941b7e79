#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "plugs/smoothkit.hpp"

using namespace plugs::smoothkit;

TEST_CASE("smooth step endpoints and partition of unity") {
    CHECK(smooth_step(-0.5) == 0.0);
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(2.0) == 1.0);
    for (double t = 0.05; t < 1.0; t += 0.05) {
        CHECK(smooth_step(t) + smooth_step(1.0 - t) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(smooth_step(t) > 0.0);
        CHECK(smooth_step(t) < 1.0);
    }
    // derivative against central differences
    for (double t : {0.2, 0.5, 0.77}) {
        const double h = 1e-6;
        const double fd = (smooth_step(t + h) - smooth_step(t - h)) / (2 * h);
        CHECK(smooth_step_prime(t) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("bump b: support, plateau, sup bound, unit integral") {
    CHECK(bump_b(0.0) == 0.0);
    CHECK(bump_b(1.0 / 3.0) == 0.0);
    CHECK(bump_b(2.0 / 3.0) == 0.0);
    CHECK(bump_b(1.0) == 0.0);
    CHECK(bump_b(0.5) == doctest::Approx(3.75));
    double sup = 0;
    for (int i = 0; i <= 10000; ++i) {
        const double v = bump_b(i / 10000.0);
        CHECK(v >= 0.0);
        sup = std::max(sup, v);
    }
    CHECK(sup <= 4.0);
    const double I = integrate_adaptive([](double x) { return bump_b(x); }, 0, 1);
    CHECK(I == doctest::Approx(1.0).epsilon(1e-11));
    CHECK_THROWS_AS(bump_b(-0.1), domain_error);
    CHECK_THROWS_AS(bump_b(1.1), domain_error);
}

TEST_CASE("bump B dominates b and is positive on (0,1)") {
    for (int i = 1; i < 1000; ++i) {
        const double x = i / 1000.0;
        CHECK(bump_B(x) > 0.0);
        CHECK(bump_B(x) > bump_b(x));
    }
    CHECK(bump_B(0.0) == 0.0);
    CHECK(bump_B(1.0) == 0.0);
    // flat at the endpoints: tiny values close to 0 and 1
    CHECK(bump_B(1e-3) < 1e-100);
    CHECK(bump_B(1.0 - 1e-3) < 1e-100);
}

TEST_CASE("transition e: plateau, support, derivative") {
    CHECK(transition_e(0.0) == 1.0);
    CHECK(transition_e(0.3) == 1.0);
    CHECK(transition_e(-0.3) == 1.0);
    CHECK(transition_e(2.0 / 3.0) == 0.0);
    CHECK(transition_e(1.0) == 0.0);
    CHECK(transition_e(0.5) == transition_e(-0.5));
    for (double x : {0.4, 0.55, -0.45}) {
        const double h = 1e-6;
        const double fd = (transition_e(x + h) - transition_e(x - h)) / (2 * h);
        CHECK(transition_e_prime(x) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("odd profile o") {
    CHECK(odd_o(0.0) == 0.0);
    CHECK(odd_o(1.0) == doctest::Approx(1.0));
    CHECK(odd_o(-1.0) == doctest::Approx(-1.0));
    for (double x : {0.2, 0.5, 0.9}) {
        CHECK(odd_o(-x) == doctest::Approx(-odd_o(x)).epsilon(1e-15));
        const double h = 1e-6;
        const double fd = (odd_o(x + h) - odd_o(x - h)) / (2 * h);
        CHECK(odd_o_prime(x) == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK(odd_o(1e-2) < 1e-300);  // flat at 0
}

TEST_CASE("width function and certified tail") {
    // w(x) > 0 everywhere, w decays like 1/x^2
    for (double x : {-10.0, -1.0, 0.0, 3.0, 100.0}) CHECK(width_w(x) > 0.0);
    CHECK(w_tail(1) == doctest::Approx(0.75).epsilon(1e-15));
    // full sum over Z telescopes to 1
    for (int K : {5, 20, 100}) {
        double s = 0;
        for (int k = -(K - 1); k <= K - 1; ++k) s += width_w(k);
        CHECK(s + w_tail(K) == doctest::Approx(1.0).epsilon(1e-14));
    }
    for (double x : {-2.3, 0.4, 5.0}) {
        const double h = 1e-6;
        const double fd = (width_w(x + h) - width_w(x - h)) / (2 * h);
        CHECK(width_w_prime(x) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("antiderivative tables agree with adaptive quadrature") {
    CHECK(cumulative_b(0.0) == 0.0);
    CHECK(cumulative_b(1.0) == doctest::Approx(1.0).epsilon(1e-11));
    for (double x : {0.17, 0.37, 0.5, 0.61, 0.9}) {
        const double ref = integrate_adaptive([](double t) { return bump_b(t); }, 0, x);
        CHECK(cumulative_b(x) == doctest::Approx(ref).epsilon(1e-11));
        const double refB = integrate_adaptive([](double t) { return bump_B(t); }, 0, x);
        CHECK(cumulative_B(x) == doctest::Approx(refB).epsilon(1e-11));
    }
    CHECK(cumulative_B_total() == doctest::Approx(integrate_adaptive(
        [](double t) { return bump_B(t); }, 0, 1)).epsilon(1e-11));
    // second-level antiderivative differentiates back to the first
    for (double x : {0.3, 0.52, 0.8}) {
        const double h = 1e-5;
        const double fd = (int_cumulative_b(x + h) - int_cumulative_b(x - h)) / (2 * h);
        CHECK(fd == doctest::Approx(cumulative_b(x)).epsilon(1e-8));
        const double fdB = (int_cumulative_B(x + h) - int_cumulative_B(x - h)) / (2 * h);
        CHECK(fdB == doctest::Approx(cumulative_B(x)).epsilon(1e-8));
    }
}

TEST_CASE("generic antiderivative table on a polynomial") {
    AntiderivativeTable t([](double x) { return 3.0 * x * x; }, 1 << 12);
    for (double x : {0.1, 0.33, 0.5, 0.99}) {
        CHECK(t.eval(x) == doctest::Approx(x * x * x).epsilon(1e-12));
    }
    CHECK(t.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature oracle") {
    const double I = integrate_adaptive([](double x) { return std::sin(x); }, 0, 1);
    CHECK(I == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
}

TEST_CASE("profile dispatch") {
    CHECK(eval_profile(SmoothProfile::bumpB_small, 0.5) == doctest::Approx(3.75));
    CHECK(eval_profile(SmoothProfile::transition_e, 0.0) == 1.0);
    CHECK_THROWS_AS(eval_profile(SmoothProfile::odd_o, 2.0), domain_error);
}
