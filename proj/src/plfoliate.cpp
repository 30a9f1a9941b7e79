#include "plugs/plfoliate.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace plugs::plfoliate {

namespace {

Rat cross3(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<RatPoint> ccw(std::vector<RatPoint> poly) {
    if (polygon_area(poly) < 0) std::reverse(poly.begin(), poly.end());
    return poly;
}

bool rp_less(const RatPoint& a, const RatPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << "/"
       << boost::multiprecision::denominator(r);
    return os.str();
}

}  // namespace

Affine Affine::then(const Affine& g) const {
    Affine r;
    r.a = g.a * a + g.b * c;
    r.b = g.a * b + g.b * d;
    r.c = g.c * a + g.d * c;
    r.d = g.c * b + g.d * d;
    r.tx = g.a * tx + g.b * ty + g.tx;
    r.ty = g.c * tx + g.d * ty + g.ty;
    return r;
}

Affine Affine::inverse() const {
    const Rat dt = det();
    if (dt == 0) throw precondition_error("affine map is singular");
    Affine r;
    r.a = d / dt;
    r.b = -b / dt;
    r.c = -c / dt;
    r.d = a / dt;
    r.tx = -(r.a * tx + r.b * ty);
    r.ty = -(r.c * tx + r.d * ty);
    return r;
}

Rat polygon_area(const std::vector<RatPoint>& poly) {
    Rat s = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        s += p.x * q.y - q.x * p.y;
    }
    return s / 2;
}

bool point_in_convex(const std::vector<RatPoint>& poly, const RatPoint& p) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        if (cross3(poly[i], poly[(i + 1) % n], p) < 0) return false;
    return true;
}

std::vector<RatPoint> convex_clip(const std::vector<RatPoint>& subject,
                                  const std::vector<RatPoint>& clip) {
    std::vector<RatPoint> out = subject;
    const std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !out.empty(); ++i) {
        const RatPoint& A = clip[i];
        const RatPoint& B = clip[(i + 1) % n];
        std::vector<RatPoint> in;
        in.swap(out);
        const std::size_t m = in.size();
        for (std::size_t j = 0; j < m; ++j) {
            const RatPoint& P = in[j];
            const RatPoint& Q = in[(j + 1) % m];
            const Rat sp = cross3(A, B, P);
            const Rat sq = cross3(A, B, Q);
            if (sp >= 0) out.push_back(P);
            if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
                const Rat t = sp / (sp - sq);
                out.push_back({P.x + t * (Q.x - P.x), P.y + t * (Q.y - P.y)});
            }
        }
    }
    return out;
}

bool PiecewiseAffineMap::contains(const RatPoint& p) const {
    for (const auto& pc : pieces)
        if (point_in_convex(pc.poly, p)) return true;
    return false;
}

std::optional<RatPoint> PiecewiseAffineMap::apply(const RatPoint& p) const {
    for (const auto& pc : pieces)
        if (point_in_convex(pc.poly, p)) return pc.map(p);
    return std::nullopt;
}

Rat PiecewiseAffineMap::source_area() const {
    Rat s = 0;
    for (const auto& pc : pieces) s += polygon_area(pc.poly);
    return s;
}

// ---- the trapezoid map and its assemblies ----

PiecewiseAffineMap build_trapezoid_f() {
    // T: a1 = (0,0), a2 = (0,2), a4 = (1,1), a5 = (1,0); a3 = (1/3,0);
    // U is T reflected about x = 1/2; a_i goes to b_{6-i}.
    const RatPoint a1{0, 0}, a2{0, 2}, a3{Rat(1, 3), 0}, a4{1, 1}, a5{1, 0};
    PiecewiseAffineMap f;
    // (a1,a3,a2) -> (b5,b3,b4) = ((0,0),(2/3,0),(0,1)): (x,y) -> (2x, y/2)
    f.pieces.push_back({{a1, a3, a2}, {2, 0, 0, Rat(1, 2), 0, 0}});
    // (a3,a5,a4) -> (b3,b1,b2): (x,y) -> ((1+x)/2, 2y)
    f.pieces.push_back(
        {{a3, a5, a4}, {Rat(1, 2), 0, 0, 2, Rat(1, 2), 0}});
    // (a3,a4,a2) -> (b3,b2,b4): rotation-like piece, det 1
    f.pieces.push_back({{a3, a4, a2},
                        {Rat(4, 5), Rat(-1, 5), Rat(9, 5), Rat(4, 5),
                         Rat(2, 5), Rat(-3, 5)}});
    return f;
}

namespace {

// h f h^{-1} on h(piece domain), piece by piece
void append_conjugate(PiecewiseAffineMap& out, const PiecewiseAffineMap& f,
                      const Affine& h) {
    const Affine hinv = h.inverse();
    for (const auto& pc : f.pieces) {
        AffinePiece np;
        for (const auto& v : pc.poly) np.poly.push_back(h(v));
        np.poly = ccw(np.poly);
        np.map = hinv.then(pc.map).then(h);
        out.pieces.push_back(np);
    }
}

const Affine kIdentity{};
const Affine kReflectY{-1, 0, 0, 1, 0, 0};           // s(x,y) = (-x, y)
const Affine kRot0{-1, 0, 0, -1, 1, 3};              // 180 deg about (1/2,3/2)
const Affine kRot2{-1, 0, 0, -1, -1, 3};             // 180 deg about (-1/2,3/2)
const Affine kMu{-1, 0, -2, -1, 1, 5};               // (x,y) -> (1-x, 5-2x-y)

}  // namespace

PiecewiseAffineMap build_g1() {
    // R1 = [-1,1] x [0,3]: T and its 180-degree rotation tile the right
    // half; the left half is their reflection.
    const auto f = build_trapezoid_f();
    PiecewiseAffineMap g;
    append_conjugate(g, f, kIdentity);
    append_conjugate(g, f, kRot0);
    append_conjugate(g, f, kReflectY);
    append_conjugate(g, f, kRot0.then(kReflectY));  // reflect after rot0
    return g;
}

PiecewiseAffineMap build_g2() {
    // R2 = R1 + triangle((0,3),(1,3),(1,5)).  Four copies of f: f itself,
    // its reflection about the y axis, the 180-degree rotation of that
    // reflection about (-1/2,3/2), and the copy under mu.  The leftover
    // triangle ((0,2),(1,1),(1,3)) carries the shear (x,y) -> (x, y+2x-1),
    // the unique affine map gluing continuously to all three neighbours
    // (the stated shear (x, y+x) does not close the tiling).
    const auto f = build_trapezoid_f();
    PiecewiseAffineMap g;
    append_conjugate(g, f, kIdentity);
    append_conjugate(g, f, kReflectY);
    append_conjugate(g, f, kReflectY.then(kRot2));
    append_conjugate(g, f, kMu);
    AffinePiece shear;
    shear.poly = ccw({{0, 2}, {1, 1}, {1, 3}});
    shear.map = {1, 0, 2, 1, 0, -1};
    g.pieces.push_back(shear);
    return g;
}

bool check_area_preserving(const PiecewiseAffineMap& m) {
    if (m.pieces.empty()) throw tiling_error("empty piece list");
    std::vector<std::vector<RatPoint>> src, img;
    for (const auto& pc : m.pieces) {
        if (pc.poly.size() < 3 || polygon_area(pc.poly) <= 0)
            throw tiling_error("degenerate or mis-oriented piece polygon");
        src.push_back(pc.poly);
        std::vector<RatPoint> ip;
        for (const auto& v : pc.poly) ip.push_back(pc.map(v));
        if (polygon_area(ip) == 0) throw tiling_error("degenerate image polygon");
        img.push_back(ccw(ip));
    }
    // pairwise interior-disjoint, source and image
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = i + 1; j < src.size(); ++j) {
            auto both = convex_clip(src[i], src[j]);
            if (!both.empty() && polygon_area(both) != 0)
                throw tiling_error("source pieces " + std::to_string(i) + " and " +
                                   std::to_string(j) + " overlap");
            both = convex_clip(img[i], img[j]);
            if (!both.empty() && polygon_area(both) != 0)
                throw tiling_error("image pieces " + std::to_string(i) + " and " +
                                   std::to_string(j) + " overlap");
        }
    }
    // continuity across shared source edges
    for (std::size_t i = 0; i < m.pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < m.pieces.size(); ++j) {
            const auto& A = m.pieces[i];
            const auto& B = m.pieces[j];
            for (std::size_t e1 = 0; e1 < A.poly.size(); ++e1) {
                const RatPoint& p = A.poly[e1];
                const RatPoint& q = A.poly[(e1 + 1) % A.poly.size()];
                for (std::size_t e2 = 0; e2 < B.poly.size(); ++e2) {
                    const RatPoint& r = B.poly[e2];
                    const RatPoint& s = B.poly[(e2 + 1) % B.poly.size()];
                    if (cross3(p, q, r) != 0 || cross3(p, q, s) != 0) continue;
                    // collinear: overlap in the edge parameter
                    const bool use_x = p.x != q.x;
                    auto par = [&](const RatPoint& v) {
                        return use_x ? (v.x - p.x) / (q.x - p.x)
                                     : (v.y - p.y) / (q.y - p.y);
                    };
                    Rat tr = par(r), ts = par(s);
                    if (tr > ts) std::swap(tr, ts);
                    const Rat lo = std::max(Rat(0), tr);
                    const Rat hi = std::min(Rat(1), ts);
                    if (lo >= hi) continue;
                    for (const Rat& t : {lo, hi}) {
                        const RatPoint v{p.x + t * (q.x - p.x),
                                         p.y + t * (q.y - p.y)};
                        if (!(A.map(v) == B.map(v)))
                            throw tiling_error(
                                "discontinuous across shared edge of pieces " +
                                std::to_string(i) + " and " + std::to_string(j) +
                                " at (" + rat_str(v.x) + ", " + rat_str(v.y) + ")");
                    }
                }
            }
        }
    }
    for (const auto& pc : m.pieces) {
        const Rat dt = pc.map.det();
        if (dt != 1 && dt != -1) return false;
    }
    return true;
}

PiecewiseAffineMap inverse_map(const PiecewiseAffineMap& m) {
    PiecewiseAffineMap r;
    for (const auto& pc : m.pieces) {
        AffinePiece np;
        for (const auto& v : pc.poly) np.poly.push_back(pc.map(v));
        np.poly = ccw(np.poly);
        np.map = pc.map.inverse();
        r.pieces.push_back(np);
    }
    return r;
}

SlantedSuspension suspension_S1() { return {build_g1(), 1}; }
SlantedSuspension suspension_S2() { return {build_g2(), 1}; }

namespace {

// t-intervals of the vertical segment p + (0, slope*t), t in [0,1], inside
// the piece polygons; returns how far the leaf reaches before leaving R
Rat shear_reach(const PiecewiseAffineMap& base, const RatPoint& p,
                const Rat& slope) {
    std::vector<std::pair<Rat, Rat>> iv;
    for (const auto& pc : base.pieces) {
        Rat lo = 0, hi = 1;
        bool ok = true;
        const std::size_t n = pc.poly.size();
        for (std::size_t i = 0; i < n && ok; ++i) {
            const RatPoint& A = pc.poly[i];
            const RatPoint& B = pc.poly[(i + 1) % n];
            // cross3(A,B, p+(0,slope*t)) = c0 + c1 t >= 0
            const Rat c0 = cross3(A, B, p);
            const Rat c1 = (B.x - A.x) * slope;
            if (c1 == 0) {
                if (c0 < 0) ok = false;
            } else if (c1 > 0) {
                lo = std::max(lo, Rat(-c0 / c1));
            } else {
                hi = std::min(hi, Rat(-c0 / c1));
            }
        }
        if (ok && lo <= hi) iv.emplace_back(lo, hi);
    }
    std::sort(iv.begin(), iv.end());
    Rat reach = 0;
    bool started = false;
    for (const auto& [lo, hi] : iv) {
        if (!started) {
            if (lo > 0) break;
            started = true;
            reach = hi;
        } else if (lo <= reach) {
            reach = std::max(reach, hi);
        } else {
            break;
        }
        if (reach >= 1) break;
    }
    if (!started) return 0;
    return std::min(reach, Rat(1));
}

}  // namespace

LeafTrace trace_leaf(const SlantedSuspension& s, const RatPoint& p0,
                     int max_steps) {
    if (!s.base.contains(p0))
        throw precondition_error("trace_leaf: seed outside the domain");
    LeafTrace out;
    RatPoint p = p0;
    out.orbit.push_back(p);
    for (int k = 0; k < max_steps; ++k) {
        const Rat reach = shear_reach(s.base, p, s.slope);
        if (reach < 1) {
            out.cls = LeafClass::exits;
            out.exit = {p.x, p.y + s.slope * reach};
            return out;
        }
        const auto q = s.base.apply({p.x, p.y + s.slope});
        if (!q) {  // cannot happen when reach == 1 and pieces are closed
            out.cls = LeafClass::exits;
            out.exit = {p.x, p.y + s.slope};
            return out;
        }
        p = *q;
        ++out.winding;
        out.orbit.push_back(p);
        if (p == p0) {
            out.cls = LeafClass::closed;
            out.period = k + 1;
            return out;
        }
    }
    out.cls = LeafClass::survives;
    return out;
}

std::vector<RatPoint> fixed_points(const SlantedSuspension& s) {
    std::vector<RatPoint> found;
    auto add = [&](const RatPoint& p) {
        for (const auto& q : found)
            if (q == p) return;
        found.push_back(p);
    };
    for (const auto& pc : s.base.pieces) {
        const Affine& M = pc.map;
        // r(p) = M(p + (0,l)) + t; fixed: (M - I) p = -c
        const Rat cx = M.b * s.slope + M.tx;
        const Rat cy = M.d * s.slope + M.ty;
        const Rat a = M.a - 1, b = M.b, c = M.c, d = M.d - 1;
        const Rat det2 = a * d - b * c;
        auto in_domain = [&](const RatPoint& p) {
            return point_in_convex(pc.poly, {p.x, p.y + s.slope});
        };
        if (det2 != 0) {
            const RatPoint p{(-cx * d + cy * b) / det2, (-cy * a + cx * c) / det2};
            if (in_domain(p)) add(p);
            continue;
        }
        // rank <= 1: rows (a b | -cx), (c d | -cy)
        Rat r1a = a, r1b = b, r1c = -cx, r2a = c, r2b = d, r2c = -cy;
        if (r1a == 0 && r1b == 0) {
            std::swap(r1a, r2a);
            std::swap(r1b, r2b);
            std::swap(r1c, r2c);
        }
        if (r1a == 0 && r1b == 0) {
            if (r1c != 0 || r2c != 0) continue;  // inconsistent
            // every point of the (shifted) polygon is fixed
            for (const auto& v : pc.poly) add({v.x, v.y - s.slope});
            continue;
        }
        // consistency of the second row
        if (r1a * r2c - r2a * r1c != 0 || r1b * r2c - r2b * r1c != 0) continue;
        // the solution line r1a x + r1b y = r1c, direction (-r1b, r1a)
        RatPoint base = r1b != 0 ? RatPoint{0, r1c / r1b}
                                 : RatPoint{r1c / r1a, 0};
        const RatPoint dir{-r1b, r1a};
        // clip the shifted line against the polygon
        Rat lo = -1000000, hi = 1000000;
        bool ok = true;
        const std::size_t n = pc.poly.size();
        for (std::size_t i = 0; i < n && ok; ++i) {
            const RatPoint& A = pc.poly[i];
            const RatPoint& B = pc.poly[(i + 1) % n];
            const RatPoint q0{base.x, base.y + s.slope};
            const Rat c0 = cross3(A, B, q0);
            const Rat c1 = (B.x - A.x) * dir.y - (B.y - A.y) * dir.x;
            if (c1 == 0) {
                if (c0 < 0) ok = false;
            } else if (c1 > 0) {
                lo = std::max(lo, Rat(-c0 / c1));
            } else {
                hi = std::min(hi, Rat(-c0 / c1));
            }
        }
        if (!ok || lo > hi) continue;
        for (const Rat& t : {lo, hi})
            add({base.x + t * dir.x, base.y + t * dir.y});
    }
    std::sort(found.begin(), found.end(), rp_less);
    return found;
}

namespace {

// extent [xmin, xmax] of the domain's bottom edge (minimal y)
std::pair<RatPoint, RatPoint> bottom_extent(const PiecewiseAffineMap& m) {
    Rat ymin;
    bool first = true;
    for (const auto& pc : m.pieces)
        for (const auto& v : pc.poly)
            if (first || v.y < ymin) {
                ymin = v.y;
                first = false;
            }
    Rat xlo, xhi;
    first = true;
    for (const auto& pc : m.pieces)
        for (const auto& v : pc.poly)
            if (v.y == ymin) {
                if (first || v.x < xlo) xlo = v.x;
                if (first || v.x > xhi) xhi = v.x;
                first = false;
            }
    return {{xlo, ymin}, {xhi, ymin}};
}

}  // namespace

int dehn_twist_count(const SlantedSuspension& s1, const SlantedSuspension& s2) {
    const auto e1 = bottom_extent(s1.base);
    const auto e2 = bottom_extent(s2.base);
    if (!(e1.first == e2.first) || !(e1.second == e2.second))
        throw matching_error("entry regions differ");
    const Rat y0 = e1.first.y;
    const Rat mid = (e1.first.x + e1.second.x) / 2;  // the stopped leaf
    bool have_lo = false, have_hi = false;
    int diff_lo = 0, diff_hi = 0;
    for (int k = 1; k < 16; ++k) {
        const Rat x = e1.first.x + Rat(k, 16) * (e1.second.x - e1.first.x);
        if (x == mid) continue;
        const RatPoint p{x, y0};
        const auto t1 = trace_leaf(s1, p, 500);
        const auto t2 = trace_leaf(s2, p, 500);
        if (t1.cls != LeafClass::exits || t2.cls != LeafClass::exits) continue;
        if (t1.exit.x != t2.exit.x)
            throw matching_error("leaf projections mismatch at x = " +
                                 rat_str(x));
        const int d = t2.winding - t1.winding;
        int& diff = x < mid ? diff_lo : diff_hi;
        bool& have = x < mid ? have_lo : have_hi;
        if (have && d != diff)
            throw matching_error("inconsistent winding difference at x = " +
                                 rat_str(x));
        diff = d;
        have = true;
    }
    if (!have_lo || !have_hi) throw matching_error("no traversing leaves sampled");
    // the relative twist is the jump of the winding difference across the
    // stopped leaf in the middle of the entry edge
    return diff_hi - diff_lo;
}

namespace {

bordism::BordismRecord suspension_record(const SlantedSuspension& s,
                                         const std::string& name) {
    bordism::BordismRecord r;
    r.name = name;
    r.base = "rectangle";
    r.entry_region = "bottom";
    r.exit_region = "top";
    const auto ext = bottom_extent(s.base);
    for (int k = 1; k < 32; ++k) {
        if (k == 16) continue;  // the stopped leaf at x = 0
        const Rat x = ext.first.x + Rat(k, 32) * (ext.second.x - ext.first.x);
        const auto t = trace_leaf(s, {x, ext.first.y}, 500);
        if (t.cls != LeafClass::exits) continue;
        r.samples.push_back({{static_cast<double>(x), static_cast<double>(ext.first.y)},
                             {static_cast<double>(t.exit.x),
                              static_cast<double>(t.exit.y)},
                             static_cast<double>(t.winding)});
    }
    r.entry_stopped.push_back({0.0, static_cast<double>(ext.first.y)});
    r.closed_leaf_count = 1;
    return r;
}

}  // namespace

bordism::BordismRecord pl_plug_record() {
    const auto s1 = suspension_S1();
    const auto s2 = suspension_S2();
    auto r1 = suspension_record(s1, "S1");
    auto r2 = suspension_record(s2, "S2");
    // the mirror of S2 enters through S2's exit region; the gluing is the
    // vertical projection, sending S1's top edge to R2's upper boundary
    r2.exit_stopped.push_back({0.0, 3.0});
    auto glued = bordism::concatenate(
        r1, bordism::mirror(r2),
        [](const bordism::Point2& p) -> bordism::Point2 {
            return {p[0], p[0] > 0 ? 3.0 + 2.0 * p[0] : 3.0};
        },
        1e-9);
    glued.name = "S-PL";
    glued.twist = bordism::Twist::integral_dehn;
    glued.twist_k = dehn_twist_count(s1, s2);
    return glued;
}

// ---- PL Moser ----

namespace {

std::vector<std::pair<int, int>> normalized_edges(
    const std::vector<std::pair<int, int>>& e) {
    std::vector<std::pair<int, int>> out;
    for (auto [u, v] : e) out.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<Transfer> moser_plan(const SimplicialMeasure& m1,
                                 const SimplicialMeasure& m2) {
    const std::size_t n = m1.measure.size();
    if (m2.measure.size() != n ||
        normalized_edges(m1.edges) != normalized_edges(m2.edges))
        throw precondition_error("measures live on different complexes");
    Rat t1 = 0, t2 = 0;
    for (const auto& v : m1.measure) t1 += v;
    for (const auto& v : m2.measure) t2 += v;
    if (t1 != t2) throw precondition_error("total measures differ");
    for (const auto& v : m1.measure)
        if (v <= 0) throw precondition_error("non-positive measure");
    if (n == 0) return {};

    // BFS spanning tree
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : m1.edges)
        if (u >= 0 && v >= 0 && u < static_cast<int>(n) &&
            v < static_cast<int>(n) && u != v) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    std::vector<int> parent(n, -1), order;
    std::vector<bool> seen(n, false);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = true;
    while (!bfs.empty()) {
        const int u = bfs.front();
        bfs.pop();
        order.push_back(u);
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                parent[v] = u;
                bfs.push(v);
            }
    }
    if (order.size() != n) throw graph_error("complex is not connected");

    // subtree imbalance: net flow each tree edge must carry toward the root
    std::vector<Rat> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = m1.measure[i] - m2.measure[i];
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) s[parent[*it]] += s[*it];

    // surpluses flow rootward leaves-first, then deficits rootward-out:
    // every intermediate stays >= min(m1, m2) of the node, hence positive
    std::vector<Transfer> plan;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (parent[v] >= 0 && s[v] > 0) plan.push_back({v, parent[v], s[v]});
    }
    for (int v : order)
        if (parent[v] >= 0 && s[v] < 0) plan.push_back({parent[v], v, -s[v]});
    return plan;
}

std::pair<std::vector<Rat>, Rat> replay_plan(const SimplicialMeasure& m1,
                                             const std::vector<Transfer>& plan) {
    std::vector<Rat> cur = m1.measure;
    Rat mn;
    bool first = true;
    auto track = [&]() {
        for (const auto& v : cur)
            if (first || v < mn) {
                mn = v;
                first = false;
            }
    };
    track();
    for (const auto& t : plan) {
        cur.at(t.from) -= t.amount;
        cur.at(t.to) += t.amount;
        track();
    }
    return {cur, mn};
}

PiecewiseAffineMap triangle_pair_transfer(const std::vector<RatPoint>& T1,
                                          const std::vector<RatPoint>& T2,
                                          const Rat& delta) {
    if (T1.size() != 3 || T2.size() != 3)
        throw precondition_error("transfer requires two triangles");
    // shared edge = the two common vertices
    std::vector<RatPoint> shared;
    RatPoint c{0, 0}, d{0, 0};
    for (const auto& v : T1) {
        bool in2 = false;
        for (const auto& w : T2)
            if (v == w) in2 = true;
        if (in2)
            shared.push_back(v);
        else
            c = v;
    }
    if (shared.size() != 2)
        throw precondition_error("triangles must share exactly one edge");
    bool found_d = false;
    for (const auto& w : T2) {
        if (w == shared[0] || w == shared[1]) continue;
        d = w;
        found_d = true;
    }
    if (!found_d) throw precondition_error("triangles coincide");
    const RatPoint a = shared[0], b = shared[1];

    const Rat A1 = boost::multiprecision::abs(polygon_area({a, b, c}));
    const Rat A2 = boost::multiprecision::abs(polygon_area({a, b, d}));
    if (A1 == 0 || A2 == 0) throw precondition_error("degenerate triangle");
    if (cross3(a, b, c) * cross3(a, b, d) >= 0)
        throw precondition_error("triangles lie on the same side of the edge");
    if (delta >= A1 || delta <= -A2)
        throw precondition_error("transfer amount out of range");

    // p = cd intersect ab; requires the union to be convex
    const Rat den = cross3(c, d, b) - cross3(c, d, a);
    if (den == 0) throw precondition_error("degenerate configuration");
    const Rat u = -cross3(c, d, a) / den;  // p = a + u (b - a)
    if (u <= 0 || u >= 1)
        throw precondition_error("union of triangles is not convex");
    const RatPoint p{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};

    // slide p along cd: area on the c side is linear in the parameter
    const Rat tp = A1 / (A1 + A2);
    const Rat tq = (A1 - delta) / (A1 + A2);
    const RatPoint pp{c.x + tq / tp * (p.x - c.x), c.y + tq / tp * (p.y - c.y)};

    auto tri_map = [](const RatPoint& v0, const RatPoint& v1, const RatPoint& v2,
                      const RatPoint& w0, const RatPoint& w1,
                      const RatPoint& w2) {
        // affine sending v_i -> w_i
        const Rat e1x = v1.x - v0.x, e1y = v1.y - v0.y;
        const Rat e2x = v2.x - v0.x, e2y = v2.y - v0.y;
        const Rat f1x = w1.x - w0.x, f1y = w1.y - w0.y;
        const Rat f2x = w2.x - w0.x, f2y = w2.y - w0.y;
        const Rat dt = e1x * e2y - e1y * e2x;
        Affine m;
        m.a = (f1x * e2y - f2x * e1y) / dt;
        m.b = (f2x * e1x - f1x * e2x) / dt;
        m.c = (f1y * e2y - f2y * e1y) / dt;
        m.d = (f2y * e1x - f1y * e2x) / dt;
        m.tx = w0.x - (m.a * v0.x + m.b * v0.y);
        m.ty = w0.y - (m.c * v0.x + m.d * v0.y);
        return m;
    };
    PiecewiseAffineMap out;
    const RatPoint corners[2] = {c, d};
    const RatPoint ends[2] = {a, b};
    for (const auto& cc : corners)
        for (const auto& ee : ends) {
            AffinePiece piece;
            piece.poly = ccw({cc, ee, p});
            if (polygon_area(piece.poly) == 0) continue;
            piece.map = tri_map(cc, ee, p, cc, ee, pp);
            out.pieces.push_back(piece);
        }
    return out;
}

std::string pieces_json(const PiecewiseAffineMap& m) {
    std::ostringstream os;
    os << "{\"pieces\":[";
    for (std::size_t i = 0; i < m.pieces.size(); ++i) {
        const auto& pc = m.pieces[i];
        if (i) os << ",";
        os << "{\"polygon\":[";
        for (std::size_t j = 0; j < pc.poly.size(); ++j) {
            if (j) os << ",";
            os << "[\"" << rat_str(pc.poly[j].x) << "\",\""
               << rat_str(pc.poly[j].y) << "\"]";
        }
        os << "],\"matrix\":[\"" << rat_str(pc.map.a) << "\",\""
           << rat_str(pc.map.b) << "\",\"" << rat_str(pc.map.c) << "\",\""
           << rat_str(pc.map.d) << "\"],\"translation\":[\""
           << rat_str(pc.map.tx) << "\",\"" << rat_str(pc.map.ty) << "\"]}";
    }
    os << "]}";
    return os.str();
}

}  // namespace plugs::plfoliate
