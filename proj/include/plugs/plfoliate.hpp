#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plugs/bordism.hpp"

// Exact-rational piecewise-affine geometry: the trapezoid map f, its
// assemblies g1 (on [-1,1]x[0,3]) and g2 (same rectangle plus a triangular
// roof), slanted suspensions and their exact leaf dynamics, the PL
// Dehn-twist count, and the constructive PL Moser theorem (measure
// transfer plans on simplicial complexes plus the 2-D geometric transfer
// map).  No floating point in this module's core.

namespace plugs::plfoliate {

using Rat = boost::multiprecision::cpp_rational;

struct tiling_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct matching_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct graph_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RatPoint {
    Rat x, y;
    bool operator==(const RatPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const RatPoint& o) const { return !(*this == o); }
};

// p -> M p + t with M = [[a, b], [c, d]]
struct Affine {
    Rat a = 1, b = 0, c = 0, d = 1, tx = 0, ty = 0;
    RatPoint operator()(const RatPoint& p) const {
        return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty};
    }
    Rat det() const { return a * d - b * c; }
    Affine then(const Affine& g) const;  // g after this
    Affine inverse() const;
};

struct AffinePiece {
    std::vector<RatPoint> poly;  // convex, counterclockwise
    Affine map;
};

struct PiecewiseAffineMap {
    std::vector<AffinePiece> pieces;
    bool contains(const RatPoint& p) const;
    // nullopt outside every piece; on shared edges the pieces agree
    std::optional<RatPoint> apply(const RatPoint& p) const;
    Rat source_area() const;
};

// Exact convex-geometry helpers (shared with tests).
Rat polygon_area(const std::vector<RatPoint>& poly);  // signed
bool point_in_convex(const std::vector<RatPoint>& poly, const RatPoint& p);
std::vector<RatPoint> convex_clip(const std::vector<RatPoint>& subject,
                                  const std::vector<RatPoint>& clip);

// The trapezoid map f: T -> U, linear on the three triangles at a3.
PiecewiseAffineMap build_trapezoid_f();
// Four conjugated copies of f tiling R1 = [-1,1] x [0,3].
PiecewiseAffineMap build_g1();
// Four copies of f on R2 = R1 + triangle((0,3),(1,3),(1,5)) plus the shear
// piece on the leftover triangle ((0,2),(1,1),(1,3)).
PiecewiseAffineMap build_g2();

// Exact: every determinant is +-1, source and image tilings are pairwise
// interior-disjoint, and the map is continuous across shared source edges.
// Malformed tilings raise tiling_error with a witness description.
bool check_area_preserving(const PiecewiseAffineMap& m);

// Invert a bijective piecewise-affine map piece by piece.
PiecewiseAffineMap inverse_map(const PiecewiseAffineMap& m);

struct SlantedSuspension {
    PiecewiseAffineMap base;
    Rat slope;
};
SlantedSuspension suspension_S1();  // g1, slope 1
SlantedSuspension suspension_S2();  // g2, slope 1

enum class LeafClass { closed, exits, survives };

struct LeafTrace {
    std::vector<RatPoint> orbit;  // section points, starting with the seed
    LeafClass cls = LeafClass::survives;
    int period = 0;      // for closed
    int winding = 0;     // completed suspension turns
    RatPoint exit{0, 0};  // boundary point, for exits
};
// Exact iteration of the return map base(x, y + slope); a leaf exits when
// the shear segment leaves the domain.
LeafTrace trace_leaf(const SlantedSuspension& s, const RatPoint& p,
                     int max_steps);

// Exact fixed points of the return map: solve (A - I)p = -c per piece.
std::vector<RatPoint> fixed_points(const SlantedSuspension& s);

// Relative twist of the two suspensions: the jump of the leafwise winding
// difference across the stopped leaf in the middle of the entry edge.
int dehn_twist_count(const SlantedSuspension& s1, const SlantedSuspension& s2);

// Flow-bordism record of the concatenation S1 * mirror(S2) with the twist
// count attached; classifies as an integrally Dehn-twisted plug.
bordism::BordismRecord pl_plug_record();

// ---- PL Moser ----

struct SimplicialMeasure {
    std::vector<std::pair<int, int>> edges;  // adjacency of simplices
    std::vector<Rat> measure;                // positive, one per simplex
};

struct Transfer {
    int from = 0, to = 0;
    Rat amount;  // > 0
};

// Ordered transfer plan converting m1 into m2 with every intermediate
// measure strictly positive (spanning tree; surpluses flow rootward first,
// then deficits are fed from the root outward).
std::vector<Transfer> moser_plan(const SimplicialMeasure& m1,
                                 const SimplicialMeasure& m2);

// Replay a plan; returns the final measure and the minimum value any
// simplex attains at any intermediate stage.
std::pair<std::vector<Rat>, Rat> replay_plan(const SimplicialMeasure& m1,
                                             const std::vector<Transfer>& plan);

// PL homeomorphism of T1 union T2 (triangles sharing exactly one edge,
// convex union) fixing the outer boundary and moving delta of area from
// T1 to T2; exact.
PiecewiseAffineMap triangle_pair_transfer(const std::vector<RatPoint>& T1,
                                          const std::vector<RatPoint>& T2,
                                          const Rat& delta);

// Piece list as JSON with rationals rendered "p/q".
std::string pieces_json(const PiecewiseAffineMap& m);

}  // namespace plugs::plfoliate
