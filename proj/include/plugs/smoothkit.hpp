#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

// Fixed profile functions shared by every field construction: the bump b
// (support [1/3,2/3], integral 1, sup <= 4), the dominating bump B > b,
// the transition e, the odd flat-at-zero o, and the width function
// w(x) = (1/pi)(atan(x+1) - atan(x)), together with certified tails and
// antiderivative tables for piecewise-exact integration downstream.

namespace plugs::smoothkit {

using domain_error = std::domain_error;

enum class SmoothProfile { bumpB_small, bumpB_big, transition_e, odd_o, width_w };

// C-infinity step: 0 for t<=0, 1 for t>=1, strictly increasing in between,
// all derivatives vanish at the ends. psi(t) + psi(1-t) == 1.
double smooth_step(double t);
double smooth_step_prime(double t);

double bump_b(double x);       // domain [0,1]
double bump_B(double x);       // domain [0,1]
double transition_e(double x); // domain [-1,1]
double transition_e_prime(double x);
double odd_o(double x);        // domain [-1,1]
double odd_o_prime(double x);

double eval_profile(SmoothProfile p, double x);

double width_w(double x);
double width_w_prime(double x);

// Exact two-sided tail: sum of w(k) over k >= K plus k <= -K.
double w_tail(int K);

// Antiderivatives on [0,1].
double cumulative_b(double x); // int_0^x b, cumulative_b(1) == 1
double cumulative_B(double x); // int_0^x B
double cumulative_B_total();   // int_0^1 B
// Second-level antiderivatives, used for outer integrals of potentials.
double int_cumulative_b(double x); // int_0^x cumulative_b
double int_cumulative_B(double x); // int_0^x cumulative_B

// Adaptive Simpson quadrature with absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12);

// Dense cumulative-Simpson antiderivative table with Hermite interpolation.
// Node derivatives are the integrand itself, so interpolation error is
// far below the table construction error.
class AntiderivativeTable {
  public:
    AntiderivativeTable(const std::function<double(double)>& f, int cells);
    double eval(double x) const; // x in [0,1]
    double total() const { return cum_.back(); }

  private:
    std::vector<double> cum_;
    std::vector<double> deriv_;
    double h_;
};

}  // namespace plugs::smoothkit
