#pragma once

#include <array>
#include <utility>
#include <vector>

#include "plugs/bordism.hpp"
#include "plugs/flowcore.hpp"

// The explicit volume-preserving plugs on the cylinder C = [1,3] x S^1 x
// [-1,1] (coordinates r, theta, z; volume dr dtheta dz): the one-closed-leaf
// semi-plug W_s and its mirror-doubled plug W, the Dehn-twisted pair P1/P2
// and the plug P whose r>2 leaves wind an extra 2*pi, the combinatorial plug
// D obtained by breaking P's closed-leaf annuli with W, and the wormhole
// semi-plug defined by an explicit flux form on a pulled-back cylinder.

namespace plugs::wilson {

constexpr double kCollarLo = 1.0;   // doubled plugs: collar z in [1, 1.1]
constexpr double kCollarHi = 1.1;
constexpr double kPlugTop = 3.1;    // mirror copy z in [1.1, 3.1]
constexpr double kMirrorCenter = 2.1;  // mirror-copy coordinate zeta = 2.1 - z

// f(r,z) = z^2 (r-2) + (1-z^2) (r-2)^3 on [1,3] x [-1,1]
double wilson_f(double r, double z);
std::array<double, 2> wilson_grad(double r, double z);  // (df/dr, df/dz)

// g(r,z) = e(z) o(r-2) + (1-e(z)) (r-2)
double twisted_g(double r, double z);
std::array<double, 2> twisted_grad(double r, double z);

// W_s = J(grad f) + d/dtheta on the cylinder, transverse at z = +-1.
flowcore::SampledField field_Ws();

// P2 = J(grad g) + d/dtheta; P1 adds 3 pi b((1+3z)/2) o'(r-2) to the
// theta-component for r > 2, |z| <= 1/3.
std::pair<flowcore::SampledField, flowcore::SampledField> fields_P1P2();

struct PlugResult {
    flowcore::SampledField field;  // doubled domain z in [-1, 3.1]
    bordism::BordismRecord record;
};

// Mirror-image construction on W_s: W_s, a vertical collar, then the
// orientation-reversed copy with zeta = 2.1 - z.  Two closed leaves.
PlugResult plug_W(int n_samples = 200, unsigned seed = 1);

// Concatenation of P1 with the reversed mirror copy of P2; leaves with r > 2
// wind 2*pi more than their r < 2 counterparts.
PlugResult plug_P(int n_samples = 100, unsigned seed = 1);

// Semi-plug record for W_s (finite leaves plus stopped probes at r = 2).
bordism::BordismRecord record_Ws(int n_samples = 100, unsigned seed = 1);

// Combinatorial composition: W's stopped circle breaks both closed-leaf
// annuli of P; the result keeps the Dehn twist and has two closed leaves.
bordism::BordismRecord plug_D_ledger(const bordism::BordismRecord& plug_p,
                                     const bordism::BordismRecord& plug_w);

// Wormhole flux alpha^*(dx^dy) + x dx^dz + y dy^dz on alpha^{-1}(C),
// C = {x^2+y^2 <= 16, z^2 <= 16}, alpha(p) = (1 + 1/|p|^2) p, converted to a
// field with the euclidean volume.  Closed orbit: the unit circle at z = 0.
flowcore::SampledField wormhole_field();
flowcore::Vec3 wormhole_alpha(const flowcore::Vec3& p);

// Level-set polylines of f on [1,3] x [-1,1] by marching squares.
std::vector<std::vector<std::array<double, 2>>> f_contours(double level,
                                                           int grid = 256);

}  // namespace plugs::wilson
