#include "plugs/bordism.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "plugs/sweep.hpp"

namespace plugs::bordism {

namespace {

double coord_dist(const Point2& a, const Point2& b, double angle_period) {
    const double d0 = a[0] - b[0];
    double d1 = a[1] - b[1];
    if (angle_period > 0) d1 = std::remainder(d1, angle_period);
    return std::hypot(d0, d1);
}

}  // namespace

BordismRecord mirror(const BordismRecord& r) {
    BordismRecord m = r;
    m.name = r.name + "-mirror";
    std::swap(m.entry_region, m.exit_region);
    std::swap(m.entry_stopped, m.exit_stopped);
    for (auto& s : m.samples) {
        std::swap(s.entry, s.exit);
        s.winding = -s.winding;
    }
    return m;
}

BordismRecord concatenate(const BordismRecord& r1, const BordismRecord& r2,
                          const GluingMap& gluing, double tol,
                          double angle_period) {
    if (r1.exit_region != r2.entry_region)
        throw gluing_error("concatenate: exit(" + r1.name + ") is " +
                           r1.exit_region + ", entry(" + r2.name + ") is " +
                           r2.entry_region);
    BordismRecord out;
    out.name = r1.name + "+" + r2.name;
    out.base = r1.base;
    out.entry_region = r1.entry_region;
    out.exit_region = r2.exit_region;
    out.closed_leaf_count = r1.closed_leaf_count + r2.closed_leaf_count;
    out.measured = r1.measured && r2.measured;
    out.twist = r1.twist != Twist::untwisted ? r1.twist : r2.twist;
    out.twist_k = r1.twist_k + r2.twist_k;
    out.entry_stopped = r1.entry_stopped;
    out.exit_stopped = r2.exit_stopped;

    auto nearest_r2 = [&](const Point2& p) -> const LeafSample* {
        const LeafSample* best = nullptr;
        double bd = tol;
        for (const auto& s : r2.samples) {
            const double d = coord_dist(s.entry, p, angle_period);
            if (d <= bd) {
                bd = d;
                best = &s;
            }
        }
        return best;
    };

    for (const auto& s1 : r1.samples) {
        const Point2 glued = gluing(s1.exit);
        // a leaf continuing into r2 may get stopped there
        bool stopped_mid = false;
        for (const auto& p : r2.entry_stopped) {
            if (coord_dist(p, glued, angle_period) <= tol) {
                out.entry_stopped.push_back(s1.entry);
                stopped_mid = true;
                break;
            }
        }
        if (stopped_mid) continue;
        const LeafSample* s2 = nearest_r2(glued);
        if (!s2)
            throw gluing_error("concatenate: no continuation sample for a leaf of " +
                               r1.name);
        out.samples.push_back({s1.entry, s2->exit, s1.winding + s2->winding});
    }
    return out;
}

MatchedEndsReport matched_ends_check(const BordismRecord& r, double tol,
                                     double angle_period) {
    MatchedEndsReport rep;
    rep.n_samples = r.samples.size();
    for (const auto& s : r.samples)
        rep.max_mismatch =
            std::max(rep.max_mismatch, coord_dist(s.entry, s.exit, angle_period));
    rep.pass = !r.samples.empty() && rep.max_mismatch <= tol;
    return rep;
}

BordismClass classify(const BordismRecord& r, double tol, double angle_period) {
    const bool prop_i = !r.entry_stopped.empty();
    const bool prop_ii = matched_ends_check(r, tol, angle_period).pass;
    if (prop_i && prop_ii) return BordismClass::plug;
    if (prop_i) return BordismClass::semi_plug;
    if (prop_ii) return BordismClass::un_plug;
    return BordismClass::none;
}

namespace {

std::vector<flowcore::Vec3> stopped_impl(
    const flowcore::SampledField& v, const std::vector<flowcore::Vec3>& entries,
    double t_max, double tol, bool parallel) {
    std::vector<char> stopped(entries.size(), 0);
    auto probe = [&](std::size_t i) {
        flowcore::IntegrateOptions opt;
        opt.t_max = t_max;
        opt.tol = tol;
        opt.store_every = 0;
        const auto traj = flowcore::integrate(v, entries[i], opt);
        stopped[i] = traj.exit_code == flowcore::ExitCode::time_exhausted ||
                     traj.exit_code == flowcore::ExitCode::closed_detected;
    };
    if (parallel)
        parallel_for(entries.size(), probe);
    else
        serial_for(entries.size(), probe);
    std::vector<flowcore::Vec3> out;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (stopped[i]) out.push_back(entries[i]);
    return out;
}

}  // namespace

std::vector<flowcore::Vec3> stopped_set_estimate(
    const flowcore::SampledField& v, const std::vector<flowcore::Vec3>& entries,
    double t_max, double tol) {
    return stopped_impl(v, entries, t_max, tol, true);
}

std::vector<flowcore::Vec3> stopped_set_estimate_serial(
    const flowcore::SampledField& v, const std::vector<flowcore::Vec3>& entries,
    double t_max, double tol) {
    return stopped_impl(v, entries, t_max, tol, false);
}

Ledger insertion_ledger(const std::string& base_name,
                        const std::vector<std::string>& base_orbits,
                        const std::vector<Insertion>& insertions) {
    Ledger l;
    l.orbits = base_orbits;
    l.entries.push_back({"base " + base_name,
                         static_cast<int>(base_orbits.size()),
                         static_cast<int>(base_orbits.size()), ""});
    std::set<std::string> pre_final(base_orbits.begin(), base_orbits.end());
    for (std::size_t k = 0; k < insertions.size(); ++k) {
        const auto& ins = insertions[k];
        const int before = static_cast<int>(l.orbits.size());
        for (const auto& target : ins.broken_orbits) {
            const auto it = std::find(l.orbits.begin(), l.orbits.end(), target);
            if (it == l.orbits.end())
                throw ledger_error("insertion_ledger: no such orbit: " + target);
            l.orbits.erase(it);
        }
        for (int j = 1; j <= ins.record.closed_leaf_count; ++j)
            l.orbits.push_back(ins.record.name + "#" + std::to_string(j));
        std::string note = "breaks " + std::to_string(ins.broken_orbits.size()) +
                           ", adds " + std::to_string(ins.record.closed_leaf_count);
        if (!ins.framing.empty()) note += ", framing " + ins.framing;
        if (ins.record.twist == Twist::integral_dehn)
            note += ", dehn k=" + std::to_string(ins.record.twist_k);
        l.entries.push_back({"insert " + ins.record.name, before,
                             static_cast<int>(l.orbits.size()), note});
        if (k + 1 == insertions.size()) {
            // certificate: nothing surviving predates the final insertion
            l.all_base_orbits_broken = true;
            for (const auto& o : l.orbits)
                if (pre_final.count(o)) l.all_base_orbits_broken = false;
        } else {
            pre_final.insert(l.orbits.begin(), l.orbits.end());
        }
    }
    l.final_count = static_cast<int>(l.orbits.size());
    return l;
}

std::string ledger_json(const Ledger& l) {
    std::ostringstream os;
    os << "{\"entries\":[";
    for (std::size_t i = 0; i < l.entries.size(); ++i) {
        const auto& e = l.entries[i];
        if (i) os << ",";
        os << "{\"op\":\"" << e.op << "\",\"before\":" << e.count_before
           << ",\"after\":" << e.count_after << ",\"note\":\"" << e.annotation
           << "\"}";
    }
    os << "],\"final_count\":" << l.final_count << ",\"all_base_orbits_broken\":"
       << (l.all_base_orbits_broken ? "true" : "false") << "}";
    return os.str();
}

}  // namespace plugs::bordism
