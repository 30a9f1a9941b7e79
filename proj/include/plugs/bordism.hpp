#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plugs/flowcore.hpp"

// Combinatorial flow-bordism algebra: leaf-sample records, mirror and
// concatenation, matched-ends and plug/semi-plug classification, stopped-set
// estimation by trajectory sweeps, and the insertion ledger that replays
// closed-leaf counting arguments without any 3-manifold data structure.

namespace plugs::bordism {

struct gluing_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ledger_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Point2 = std::array<double, 2>;  // transverse coordinates on a region

// A finite leaf: entry and exit in region coordinates, net winding.
struct LeafSample {
    Point2 entry;
    Point2 exit;
    double winding = 0;
};

enum class Twist { untwisted, integral_dehn, wormhole };

struct BordismRecord {
    std::string name;
    std::string base;
    std::string entry_region, exit_region;
    std::vector<LeafSample> samples;     // finite leaves only
    std::vector<Point2> entry_stopped;   // S_- probes (no exit within horizon)
    std::vector<Point2> exit_stopped;    // S_+ probes
    int closed_leaf_count = 0;
    Twist twist = Twist::untwisted;
    int twist_k = 0;  // Dehn twist multiplicity when twist == integral_dehn
    bool measured = true;
};

// Leaf-orientation reversal: entry and exit regions swap, windings negate.
BordismRecord mirror(const BordismRecord& r);

using GluingMap = std::function<Point2(const Point2&)>;

// Concatenation along exit(r1) = entry(r2) under the gluing map.  Samples
// compose pairwise (matched within tol); windings add; stopped probes of
// either half become stopped probes of the whole.
BordismRecord concatenate(const BordismRecord& r1, const BordismRecord& r2,
                          const GluingMap& gluing, double tol = 1e-6,
                          double angle_period = 0.0);

struct MatchedEndsReport {
    double max_mismatch = 0;
    std::size_t n_samples = 0;
    bool pass = false;
};

// Property (ii): every finite leaf exits directly above its entry point.
// If angle_period > 0 the second coordinate is compared modulo that period.
MatchedEndsReport matched_ends_check(const BordismRecord& r, double tol = 1e-6,
                                     double angle_period = 0.0);

enum class BordismClass { plug, semi_plug, un_plug, none };

// (i) = some entry-stopped probe, (ii) = matched ends.
BordismClass classify(const BordismRecord& r, double tol = 1e-6,
                      double angle_period = 0.0);

// Entry points whose forward trajectory neither leaves the domain nor closes
// up within t_max.  Trajectories are integrated at the given tolerance.
std::vector<flowcore::Vec3> stopped_set_estimate(
    const flowcore::SampledField& v, const std::vector<flowcore::Vec3>& entries,
    double t_max, double tol = 1e-6);
std::vector<flowcore::Vec3> stopped_set_estimate_serial(
    const flowcore::SampledField& v, const std::vector<flowcore::Vec3>& entries,
    double t_max, double tol = 1e-6);

// ---- insertion ledger ----

struct Insertion {
    BordismRecord record;
    std::vector<std::string> broken_orbits;  // names of orbits this breaks
    std::string framing;                     // symbolic, e.g. "m+l"
};

struct LedgerEntry {
    std::string op;
    int count_before = 0;
    int count_after = 0;
    std::string annotation;
};

struct Ledger {
    std::vector<LedgerEntry> entries;
    std::vector<std::string> orbits;  // names of closed orbits now present
    int final_count = 0;
    bool all_base_orbits_broken = false;  // no pre-final orbit survived
};

// Replays Theorem-2-style assembly: each insertion removes the orbits it
// breaks (which must currently exist) and contributes its record's own
// closed leaves, named "<record>#k".
Ledger insertion_ledger(const std::string& base_name,
                        const std::vector<std::string>& base_orbits,
                        const std::vector<Insertion>& insertions);

std::string ledger_json(const Ledger& l);

}  // namespace plugs::bordism
