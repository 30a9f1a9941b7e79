#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Flux-form / vector-field machinery: fields from flux forms, 2-D
// Hamiltonian duality, divergence sweeps, adaptive trajectory integration
// with boundary event location and winding bookkeeping, Poincare
// first-return closed-orbit search, the irrational T^3 flow and
// suspensions of planar maps.

namespace plugs::flowcore {

struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct map_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec3 {
    double x = 0, y = 0, z = 0;
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const;
};

using FieldFn = std::function<Vec3(const Vec3&)>;
using DomainFn = std::function<bool(const Vec3&)>;

enum class VolumeForm { euclidean, product_measure };

struct SampledField {
    FieldFn eval;
    DomainFn domain;
    VolumeForm volume_form = VolumeForm::euclidean;
    // Coordinates treated as angles: winding is accumulated (coordinates are
    // integrated unwrapped); the domain predicate must be period-blind there.
    std::array<bool, 3> periodic{{false, false, false}};
    std::array<double, 3> period{{0, 0, 0}};
};

// Flux form stored in the cyclic basis: w = c_yz dy^dz + c_zx dz^dx + c_xy dx^dy.
struct FluxForm {
    std::function<double(const Vec3&)> c_yz, c_zx, c_xy;
    DomainFn domain;
    Vec3 components(const Vec3& p) const {
        return {c_yz(p), c_zx(p), c_xy(p)};
    }
};

// Contraction inverse: the unique v with iota_v(mu) = w.  For the euclidean
// form this is v = (c_yz, c_zx, c_xy); v vanishes exactly where w does.
SampledField field_from_flux(const FluxForm& w,
                             VolumeForm mu = VolumeForm::euclidean);

using Field2D = std::function<std::array<double, 2>(double, double)>;

// J(grad f) = (-df/db, df/da), by central differences of f.
Field2D hamiltonian_2d(const std::function<double(double, double)>& f,
                       double h = 1e-6);
// Same duality from a closed-form gradient.
Field2D hamiltonian_2d_exact(
    const std::function<std::array<double, 2>(double, double)>& grad);

struct DivergenceReport {
    double max_abs_div = 0;
    double max_rel_div = 0;  // |div| / (1 + |field|)
    Vec3 worst_point;
    std::size_t n_points = 0;
};

DivergenceReport divergence_check(const SampledField& v,
                                  const std::vector<Vec3>& points,
                                  double h = 1e-4);
// Serial reference twin, kept for testing the parallel sweep.
DivergenceReport divergence_check_serial(const SampledField& v,
                                         const std::vector<Vec3>& points,
                                         double h = 1e-4);

enum class ExitCode { exited_boundary, time_exhausted, closed_detected };

struct Trajectory {
    std::vector<std::pair<double, Vec3>> samples;  // unwrapped coordinates
    Vec3 winding;       // net coordinate change for periodic coordinates
    ExitCode exit_code = ExitCode::time_exhausted;
    double total_time = 0;
    const Vec3& end() const { return samples.back().second; }
    double closed_period = 0;  // set when exit_code == closed_detected
};

struct IntegrateOptions {
    double t_max = 100.0;
    double tol = 1e-10;
    std::size_t max_steps = 20'000'000;
    bool detect_closed = false;
    double closed_tol = 1e-6;
    double closed_t_min = 1e-3;
    // keep every k-th accepted step in samples (first and last always kept)
    std::size_t store_every = 1;
};

Trajectory integrate(const SampledField& v, const Vec3& x0,
                     const IntegrateOptions& opt);

std::string trajectory_csv(const Trajectory& t,
                           const std::array<bool, 3>& periodic);

struct ClosedOrbit {
    double period;
    Vec3 point;
};

struct SectionSpec {
    int coord = 2;       // coordinate index of the section plane
    double value = 0;    // plane coordinate value
    int direction = 1;   // crossing direction sign (+1: increasing)
};

// Poincare first-return search: integrates from seed, collects section
// crossings, reports a period and point once a return lands within tol of an
// earlier crossing.  Returns nullopt after max_returns or if the orbit
// leaves the domain.
std::optional<ClosedOrbit> detect_closed_orbit(const SampledField& v,
                                               const Vec3& seed,
                                               const SectionSpec& section,
                                               double tol = 1e-6,
                                               int max_returns = 1000,
                                               double tol_integrate = 1e-10);

SampledField linear_t3_flow(double r1, double r2, double r3);

// Suspension of an area-preserving planar map: unit vertical flow on
// F x [0,1) with return map sigma.  Closed orbits are finite sigma-orbits.
struct SuspensionFlow {
    std::function<std::array<double, 2>(const std::array<double, 2>&)> sigma;
    std::function<bool(const std::array<double, 2>&)> domain;

    SampledField field() const;
    // Period of the sigma-orbit through p if it returns within tol in
    // max_iters steps; throws map_error if sigma leaves the domain.
    std::optional<int> finite_orbit(const std::array<double, 2>& p,
                                    int max_iters, double tol) const;
};

}  // namespace plugs::flowcore
