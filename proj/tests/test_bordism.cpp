#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "plugs/bordism.hpp"
#include "plugs/wilson.hpp"

using namespace plugs::bordism;
using plugs::flowcore::Vec3;

namespace {
constexpr double kPi = 3.14159265358979323846;

BordismRecord synthetic(bool stopped, bool matched) {
    BordismRecord r;
    r.name = "synthetic";
    r.base = "disk";
    r.entry_region = "bottom";
    r.exit_region = "top";
    for (int i = 0; i < 10; ++i) {
        const Point2 p{0.1 * i, 0.05 * i};
        const Point2 q = matched ? p : Point2{p[0] + 0.3, p[1]};
        r.samples.push_back({p, q, 0.1 * i});
    }
    if (stopped) r.entry_stopped.push_back({0.5, 0.5});
    return r;
}
}  // namespace

TEST_CASE("mirror is an involution and swaps the stopped sets") {
    auto r = synthetic(true, false);
    r.exit_stopped.push_back({0.9, 0.9});
    const auto m = mirror(r);
    CHECK(m.entry_region == "top");
    CHECK(m.exit_region == "bottom");
    CHECK(m.entry_stopped[0][0] == 0.9);
    CHECK(m.exit_stopped[0][0] == 0.5);
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        CHECK(m.samples[i].entry == r.samples[i].exit);
        CHECK(m.samples[i].winding == -r.samples[i].winding);
    }
    const auto mm = mirror(m);
    CHECK(mm.entry_region == r.entry_region);
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        CHECK(mm.samples[i].entry == r.samples[i].entry);
        CHECK(mm.samples[i].winding == r.samples[i].winding);
    }
}

TEST_CASE("mirror-image concatenation yields matched ends") {
    const auto r = synthetic(false, false);
    const auto glued = concatenate(r, mirror(r), [](const Point2& p) { return p; });
    const auto rep = matched_ends_check(glued, 1e-12);
    CHECK(rep.pass);
    CHECK(rep.n_samples == r.samples.size());
    for (const auto& s : glued.samples) CHECK(s.winding == 0.0);
    // the un-mirrored record itself fails matched ends
    CHECK(!matched_ends_check(r, 1e-6).pass);
}

TEST_CASE("concatenation adds closed leaves and checks regions") {
    auto a = synthetic(false, true);
    a.closed_leaf_count = 2;
    auto b = synthetic(false, true);
    b.closed_leaf_count = 3;
    b.entry_region = "top";
    b.exit_region = "lid";
    const auto c = concatenate(a, b, [](const Point2& p) { return p; });
    CHECK(c.closed_leaf_count == 5);
    CHECK(c.entry_region == "bottom");
    CHECK(c.exit_region == "lid");

    auto bad = synthetic(false, true);
    bad.entry_region = "elsewhere";
    CHECK_THROWS_AS(concatenate(a, bad, [](const Point2& p) { return p; }),
                    gluing_error);
}

TEST_CASE("a leaf stopped in the second half stops the concatenation") {
    auto a = synthetic(false, true);
    auto b = synthetic(false, true);
    b.entry_region = "top";
    b.entry_stopped.push_back(a.samples[3].exit);
    b.samples.erase(b.samples.begin() + 3);
    const auto c = concatenate(a, b, [](const Point2& p) { return p; });
    CHECK(c.samples.size() == a.samples.size() - 1);
    REQUIRE(c.entry_stopped.size() == 1);
    CHECK(c.entry_stopped[0] == a.samples[3].entry);
}

TEST_CASE("classification table") {
    CHECK(classify(synthetic(true, true)) == BordismClass::plug);
    CHECK(classify(synthetic(true, false)) == BordismClass::semi_plug);
    CHECK(classify(synthetic(false, true)) == BordismClass::un_plug);
    CHECK(classify(synthetic(false, false)) == BordismClass::none);
}

TEST_CASE("matched ends modulo the angular period") {
    BordismRecord r = synthetic(false, true);
    r.samples[0].exit[1] += 2 * kPi;  // same angle, different lift
    CHECK(!matched_ends_check(r, 1e-9).pass);
    CHECK(matched_ends_check(r, 1e-9, 2 * kPi).pass);
}

TEST_CASE("stopped set estimation") {
    // trivial vertical field: nothing stops
    plugs::flowcore::SampledField vert;
    vert.eval = [](const Vec3&) { return Vec3{0, 0, 1}; };
    vert.domain = [](const Vec3& p) { return p.z < 1.0; };
    std::vector<Vec3> entries;
    for (int i = 0; i < 25; ++i) entries.push_back({0.1 * i, 0.0, 0.0});
    CHECK(stopped_set_estimate(vert, entries, 50.0).empty());

    // W_s: stopped points hug the circle r = 2
    const auto ws = plugs::wilson::field_Ws();
    entries.clear();
    for (int i = 0; i <= 64; ++i)
        entries.push_back({1.0 + 2.0 * i / 64, 0.0, -1.0});
    const auto stopped = stopped_set_estimate(ws, entries, 60.0, 1e-6);
    CHECK(!stopped.empty());
    for (const auto& p : stopped) CHECK(std::fabs(p.x - 2.0) < 0.05);
    // the nodes nearest r=2 are flagged
    bool has_near = false;
    for (const auto& p : stopped)
        if (std::fabs(p.x - 2.0) < 0.02) has_near = true;
    CHECK(has_near);
    // serial twin agrees
    const auto serial = stopped_set_estimate_serial(ws, entries, 60.0, 1e-6);
    REQUIRE(serial.size() == stopped.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(serial[i].x == stopped[i].x);
}

TEST_CASE("insertion ledger replays the closed-leaf counting") {
    BordismRecord d;
    d.name = "D";
    d.closed_leaf_count = 2;
    d.twist = Twist::integral_dehn;
    d.twist_k = 1;
    BordismRecord w;
    w.name = "W";
    w.closed_leaf_count = 2;

    // T^3 irrational flow has no closed orbits; D contributes two; W breaks
    // both and contributes its own two.
    std::vector<Insertion> ins;
    ins.push_back({d, {}, "m+l"});
    ins.push_back({w, {"D#1", "D#2"}, ""});
    const auto ledger = insertion_ledger("T3", {}, ins);
    CHECK(ledger.final_count == 2);
    CHECK(ledger.all_base_orbits_broken);
    CHECK(ledger.entries.size() == 3);
    CHECK(ledger.entries[1].count_after == 2);

    // empty insertion list: base unchanged
    const auto base_only = insertion_ledger("base", {"orbit-a"}, {});
    CHECK(base_only.final_count == 1);

    // breaking a nonexistent orbit is an error
    std::vector<Insertion> bad;
    bad.push_back({w, {"ghost"}, ""});
    CHECK_THROWS_AS(insertion_ledger("T3", {}, bad), ledger_error);

    const auto js = ledger_json(ledger);
    CHECK(js.find("\"final_count\":2") != std::string::npos);
    CHECK(js.find("\"all_base_orbits_broken\":true") != std::string::npos);
}

TEST_CASE("surviving base orbit defeats the certificate") {
    BordismRecord w;
    w.name = "W";
    w.closed_leaf_count = 2;
    std::vector<Insertion> ins;
    ins.push_back({w, {"a"}, ""});  // leaves "b" alive
    const auto ledger = insertion_ledger("base", {"a", "b"}, ins);
    CHECK(ledger.final_count == 3);
    CHECK(!ledger.all_base_orbits_broken);
}
