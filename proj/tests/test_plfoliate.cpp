#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "plugs/plfoliate.hpp"

using namespace plugs::plfoliate;
using plugs::bordism::BordismClass;
using plugs::bordism::classify;
using plugs::bordism::Twist;

namespace {
const RatPoint kA1{0, 0}, kA2{0, 2}, kA3{Rat(1, 3), 0}, kA4{1, 1}, kA5{1, 0};
}

TEST_CASE("trapezoid map: exact images and area preservation") {
    const auto f = build_trapezoid_f();
    CHECK(f.pieces.size() == 3);
    CHECK(f.source_area() == Rat(3, 2));

    // vertex correspondence a_i -> b_{6-i} (b = reflection about x = 1/2)
    auto img = [&](const RatPoint& p) { return *f.apply(p); };
    CHECK(img(kA1) == RatPoint{0, 0});
    CHECK(img(kA2) == RatPoint{0, 1});
    CHECK(img(kA3) == RatPoint{Rat(2, 3), 0});
    CHECK(img(kA4) == RatPoint{1, 2});
    CHECK(img(kA5) == RatPoint{1, 0});

    CHECK(check_area_preserving(f));

    // per-piece image triangles keep their areas (dets are +1)
    for (const auto& pc : f.pieces) {
        CHECK(pc.map.det() == 1);
        std::vector<RatPoint> ip;
        for (const auto& v : pc.poly) ip.push_back(pc.map(v));
        CHECK(boost::multiprecision::abs(polygon_area(ip)) ==
              boost::multiprecision::abs(polygon_area(pc.poly)));
    }

    // outside the trapezoid
    CHECK(!f.apply({Rat(9, 10), Rat(3, 2)}).has_value());

    // inverse composes to the identity on interior sample points
    const auto finv = inverse_map(f);
    for (const RatPoint p : {RatPoint{Rat(1, 7), Rat(1, 7)},
                             RatPoint{Rat(1, 2), Rat(1, 2)},
                             RatPoint{Rat(1, 5), Rat(3, 2)}}) {
        const auto q = f.apply(p);
        REQUIRE(q.has_value());
        CHECK(*finv.apply(*q) == p);
    }
}

TEST_CASE("check_area_preserving: verdicts and tiling diagnostics") {
    const std::vector<RatPoint> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

    PiecewiseAffineMap shear;
    shear.pieces.push_back({sq, {1, 0, 1, 1, 0, 0}});
    CHECK(check_area_preserving(shear));

    PiecewiseAffineMap scale;
    scale.pieces.push_back({sq, {2, 0, 0, 2, 0, 0}});
    CHECK(!check_area_preserving(scale));

    PiecewiseAffineMap overlap;  // two copies of the same square
    overlap.pieces.push_back({sq, {}});
    overlap.pieces.push_back({sq, {1, 0, 0, 1, 0, 0}});
    CHECK_THROWS_AS(check_area_preserving(overlap), tiling_error);

    PiecewiseAffineMap jump;  // discontinuous across x = 1
    jump.pieces.push_back({sq, {}});
    jump.pieces.push_back(
        {{{1, 0}, {2, 0}, {2, 1}, {1, 1}}, {1, 0, 0, 1, 1, 0}});
    CHECK_THROWS_AS(check_area_preserving(jump), tiling_error);

    PiecewiseAffineMap empty;
    CHECK_THROWS_AS(check_area_preserving(empty), tiling_error);
}

TEST_CASE("assemblies g1 and g2: exact tilings of their rectangles") {
    const auto g1 = build_g1();
    CHECK(g1.pieces.size() == 12);
    CHECK(g1.source_area() == 6);  // [-1,1] x [0,3]
    CHECK(check_area_preserving(g1));
    CHECK(*g1.apply({0, 2}) == RatPoint{0, 1});  // the f piece acts first

    const auto g2 = build_g2();
    CHECK(g2.pieces.size() == 13);
    CHECK(g2.source_area() == 7);  // rectangle plus the roof triangle
    CHECK(check_area_preserving(g2));
    // a point of the shear triangle, in no other piece
    CHECK(*g2.apply({Rat(1, 2), 2}) == RatPoint{Rat(1, 2), 2});
    // the roof copy under mu covers (1/2, 3)
    CHECK(g2.contains({Rat(1, 2), 3}));
}

TEST_CASE("slanted suspensions: fixed point, closed leaf, exits") {
    const auto s1 = suspension_S1();
    const auto s2 = suspension_S2();

    const auto fp1 = fixed_points(s1);
    REQUIRE(fp1.size() == 1);
    CHECK(fp1[0] == RatPoint{0, 1});
    const auto fp2 = fixed_points(s2);
    REQUIRE(fp2.size() == 1);
    CHECK(fp2[0] == RatPoint{0, 1});

    const auto closed = trace_leaf(s1, {0, 1}, 10);
    CHECK(closed.cls == LeafClass::closed);
    CHECK(closed.period == 1);
    CHECK(closed.winding == 1);

    // the x = 0 leaf below the fixed point converges without exiting
    const auto stuck = trace_leaf(s1, {0, 0}, 200);
    CHECK(stuck.cls == LeafClass::survives);

    // generic leaves traverse and exit through the top boundary
    for (const Rat x : {Rat(1, 3), Rat(-1, 2), Rat(7, 16)}) {
        const auto t1 = trace_leaf(s1, {x, 0}, 500);
        REQUIRE(t1.cls == LeafClass::exits);
        CHECK(t1.exit.y == 3);
        CHECK(t1.winding >= 1);
        const auto t2 = trace_leaf(s2, {x, 0}, 500);
        REQUIRE(t2.cls == LeafClass::exits);
        if (t2.exit.x > 0)
            CHECK(t2.exit.y == 3 + 2 * t2.exit.x);
        else
            CHECK(t2.exit.y == 3);
        // leaves of the two suspensions project to the same exit point
        CHECK(t1.exit.x == t2.exit.x);
    }

    CHECK_THROWS_AS(trace_leaf(s1, {5, 5}, 10), precondition_error);
}

TEST_CASE("dehn twist count and the assembled PL plug record") {
    const auto s1 = suspension_S1();
    const auto s2 = suspension_S2();
    CHECK(dehn_twist_count(s1, s1) == 0);
    CHECK(dehn_twist_count(s1, s2) == 1);

    const auto rec = pl_plug_record();
    CHECK(rec.closed_leaf_count == 2);
    CHECK(rec.twist == Twist::integral_dehn);
    CHECK(rec.twist_k == 1);
    CHECK(!rec.entry_stopped.empty());
    CHECK(rec.samples.size() >= 20);
    CHECK(classify(rec, 1e-9) == BordismClass::plug);
}

TEST_CASE("moser plans: exact transfers with positive intermediates") {
    SimplicialMeasure m1{{{0, 1}}, {2, 1}};
    SimplicialMeasure m2{{{0, 1}}, {Rat(3, 2), Rat(3, 2)}};
    const auto plan = moser_plan(m1, m2);
    REQUIRE(plan.size() == 1);
    CHECK(plan[0].from == 0);
    CHECK(plan[0].to == 1);
    CHECK(plan[0].amount == Rat(1, 2));
    const auto [fin, mn] = replay_plan(m1, plan);
    CHECK(fin == m2.measure);
    CHECK(mn > 0);

    CHECK(moser_plan(m1, m1).empty());

    SimplicialMeasure bad_total{{{0, 1}}, {2, 2}};
    CHECK_THROWS_AS(moser_plan(m1, bad_total), precondition_error);

    SimplicialMeasure disc1{{}, {1, 1}};
    SimplicialMeasure disc2{{}, {Rat(1, 2), Rat(3, 2)}};
    CHECK_THROWS_AS(moser_plan(disc1, disc2), graph_error);

    SimplicialMeasure other_graph{{{0, 1}, {1, 2}}, {1, 1, 1}};
    SimplicialMeasure same_nodes{{{0, 2}, {1, 2}}, {1, 1, 1}};
    CHECK_THROWS_AS(moser_plan(other_graph, same_nodes), precondition_error);
}

TEST_CASE("moser plans: random connected complexes replay exactly") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 39);
        SimplicialMeasure m1, m2;
        // random spanning tree plus a few chords
        for (int v = 1; v < n; ++v)
            m1.edges.emplace_back(static_cast<int>(rng() % v), v);
        for (int k = 0; k < n / 3; ++k)
            m1.edges.emplace_back(static_cast<int>(rng() % n),
                                  static_cast<int>(rng() % n));
        for (int v = 0; v < n; ++v)
            m1.measure.emplace_back(1 + static_cast<int>(rng() % 100));
        m2.edges = m1.edges;
        m2.measure = m1.measure;
        std::shuffle(m2.measure.begin(), m2.measure.end(), rng);

        const auto plan = moser_plan(m1, m2);
        for (const auto& t : plan) CHECK(t.amount > 0);
        const auto [fin, mn] = replay_plan(m1, plan);
        CHECK(fin == m2.measure);
        CHECK(mn > 0);
    }
}

TEST_CASE("triangle pair transfer: exact area shift, boundary fixed") {
    const std::vector<RatPoint> T1{{0, 0}, {1, 0}, {0, 1}};
    const std::vector<RatPoint> T2{{1, 0}, {0, 1}, {1, 1}};

    const auto m = triangle_pair_transfer(T1, T2, Rat(1, 4));
    CHECK(m.pieces.size() == 4);
    CHECK(m.source_area() == 1);

    // outer boundary (all four outer vertices) is fixed
    for (const RatPoint v :
         {RatPoint{0, 0}, RatPoint{1, 0}, RatPoint{0, 1}, RatPoint{1, 1}})
        CHECK(*m.apply(v) == v);

    // the image of T1's side of the fan has area exactly A1 - delta = 1/4
    Rat c_side = 0;
    for (const auto& pc : m.pieces) {
        bool has_c = false;
        for (const auto& v : pc.poly)
            if (v == RatPoint{0, 0}) has_c = true;
        if (!has_c) continue;
        std::vector<RatPoint> ip;
        for (const auto& v : pc.poly) ip.push_back(pc.map(v));
        c_side += boost::multiprecision::abs(polygon_area(ip));
    }
    CHECK(c_side == Rat(1, 4));

    // delta = 0 gives the identity
    const auto id = triangle_pair_transfer(T1, T2, 0);
    for (const RatPoint p : {RatPoint{Rat(1, 3), Rat(1, 5)},
                             RatPoint{Rat(3, 4), Rat(3, 4)}})
        CHECK(*id.apply(p) == p);

    // composes with its inverse to the identity
    const auto minv = inverse_map(m);
    for (const RatPoint p : {RatPoint{Rat(1, 8), Rat(1, 8)},
                             RatPoint{Rat(2, 3), Rat(2, 3)},
                             RatPoint{Rat(1, 2), Rat(1, 4)}})
        CHECK(*minv.apply(*m.apply(p)) == p);

    // out-of-range shifts and non-convex unions are rejected
    CHECK_THROWS_AS(triangle_pair_transfer(T1, T2, Rat(1, 2)), precondition_error);
    CHECK_THROWS_AS(triangle_pair_transfer(T1, T2, Rat(-1, 2)), precondition_error);
    const std::vector<RatPoint> far{{0, 0}, {2, 0}, {1, 1}};
    const std::vector<RatPoint> skew{{0, 0}, {2, 0}, {3, -1}};
    CHECK_THROWS_AS(triangle_pair_transfer(far, skew, Rat(1, 8)),
                    precondition_error);
    CHECK_THROWS_AS(triangle_pair_transfer(T1, T1, Rat(1, 8)),
                    precondition_error);
}

TEST_CASE("pieces_json renders exact rationals") {
    const auto s = pieces_json(build_trapezoid_f());
    CHECK(s.find("\"pieces\"") != std::string::npos);
    CHECK(s.find("\"1/3\"") != std::string::npos);
    CHECK(s.find("\"4/5\"") != std::string::npos);
}
