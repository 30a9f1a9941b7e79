#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "plugs/flowcore.hpp"

// The Denjoy interval family I_{n,phi} (widths w(n-phi), placed on S^1 in
// the order of n mod tau), the C^1 Denjoy circle map, the area-preserving
// strip shift sigma, and the volume-preserving fields built from the
// densities f = (w'/w) b(L) and F = w^{3/2} B(L): potentials H and V,
// fields h = J(grad H), v = J(grad V), E' = v + h + d/dphi, with the
// v_z > |h_z| verification sweep and calibration of the constant in V.
//
// All integrals of f, |f| and F are piecewise exact: per-slice prefix sums
// plus the antiderivative tables of the profile functions.  Interval
// positions carry an equidistribution correction for the truncated tail,
// with a certified error bound eps_a.

namespace plugs::denjoy {

struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct calibration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Params {
    double C_v = 40.0;      // constant in V; see calibrate_C
    double delta = 1e-9;    // minimum retained interval width
    double quad_tol = 1e-10;
};

struct IntervalEntry {
    std::int64_t n;
    double res;    // n mod tau, in [0, tau)
    double left;   // a_{n,phi} in [0, 1)
    double width;  // w(n - phi)
};

// Interval table at fixed phi with layered prefix sums.
class PhiSlice {
  public:
    PhiSlice(double phi, double delta);

    double phi() const { return phi_; }
    double tail_mass() const { return tail_mass_; }
    double eps_a() const { return eps_a_; }
    const std::vector<IntervalEntry>& entries() const { return entries_; }

    // entry by index n; nullptr if truncated away
    const IntervalEntry* by_n(std::int64_t n) const;
    // index into entries() of the interval containing theta mod 1, or -1
    int find(double theta) const;

    // first-level antiderivatives from 0, valid for any real x
    double P_f(double x) const;     // int_0^x f
    double P_absf(double x) const;  // int_0^x |f|
    double P_F(double x) const;     // int_0^x F
    // second-level antiderivatives int_0^x P_*(t) dt
    double Q_f(double x) const;
    double Q_F(double x) const;

    double total_f() const { return total_f_; }
    double total_F() const { return total_F_; }

  private:
    template <int Kind> double P_eval(double x) const;
    template <int Kind> double Q_eval(double x) const;

    double phi_;
    double tail_mass_, eps_a_;
    double total_f_, total_absf_, total_F_;
    double q_total_f_, q_total_F_;
    std::vector<IntervalEntry> entries_;  // sorted by left
    std::vector<double> pre_f_, pre_absf_, pre_F_;  // prefix of full-interval integrals
    std::vector<double> q2_f_, q2_F_;               // second-level values at left_i
};

// Shared slice cache (slices are immutable once built).
std::shared_ptr<const PhiSlice> slice_at(double phi, double delta = 1e-9);

// a_{n,phi} with certified error <= eps (truncation + equidistribution bound).
std::pair<double, double> a_series(std::int64_t n, double phi, double eps);

// (a_{n,phi} mod 1, w(n - phi))
std::pair<double, double> interval_at(std::int64_t n, double phi,
                                      double delta = 1e-9);

struct DenjoyImage {
    double image;  // alpha(x) in [0, 1)
    double deriv;  // d alpha / dx
};
// The C^1 Denjoy model at phi = 0: on I_n the paper's derivative profile,
// linear on the truncation gaps.
DenjoyImage denjoy_map(double x, double delta = 1e-9);

// Birkhoff average of the lift displacement.
double rotation_number(const std::function<double(double)>& map, double x0,
                       int iterations);

// sigma(theta, phi) = (theta + a_{1,phi+1} mod 1, phi + 1)
std::pair<double, double> sigma_map(double theta, double phi,
                                    double delta = 1e-9);

double density_f(double theta, double phi, double delta = 1e-9);
double density_F(double theta, double phi, double delta = 1e-9);

struct HzVz {
    double h_z, v_z, h_abs;
};
HzVz hz_vz(double theta, double z, double phi, const Params& p);

// (H, V); V extended to z = 0 by continuity.
std::pair<double, double> potentials_HV(double theta, double z, double phi,
                                        const Params& p);

struct VPFields {
    flowcore::SampledField h, v, Ep;  // coordinates (theta, phi, z)
};
VPFields fields_hvE(const Params& p);

struct GridSpec {
    int n_theta = 100;
    int n_z = 20;
    int n_phi = 50;
    double z_min = 1e-3, z_max = 1.0;  // logarithmic z grid
};

struct PropertyIvReport {
    bool pass = false;
    double min_margin = 0;  // min of v_z - h_abs
    double witness[3] = {0, 0, 0};  // theta, z, phi
    std::size_t n_points = 0;
    std::size_t case_single_interval = 0;  // I_h inside one I_{n,phi}
    std::size_t case_main = 0;             // I_v' spans a Z(a,b)
    std::size_t case_exceptional = 0;      // I_h endpoint inside an interval
    double tail_bound = 0;  // truncation contribution bound on |h| side
    double eps_a = 0;
};
PropertyIvReport verify_property_iv(const Params& p, const GridSpec& g);
PropertyIvReport verify_property_iv_serial(const Params& p, const GridSpec& g);

struct Calibration {
    double C_v;          // 2 x smallest passing constant
    double ratio_max;    // sup of h_abs / (v_z / C)
    double witness[3] = {0, 0, 0};
};
Calibration calibrate_C(const GridSpec& g, double delta = 1e-9);

}  // namespace plugs::denjoy
