// Benchmark of the OpenMP-parallel sweep kernels against their serial
// reference twins: divergence sweeps, stopped-set estimation, and the
// property-(iv) grid verification.  Results must agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "CLI11.hpp"
#include "plugs/bordism.hpp"
#include "plugs/denjoy.hpp"
#include "plugs/flowcore.hpp"
#include "plugs/wilson.hpp"

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double timed(F&& f) {
    const double t0 = now();
    f();
    return now() - t0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel vs serial sweep benchmark"};
    int n_points = 20000;
    int grid = 96;
    app.add_option("--points", n_points, "divergence sweep size");
    app.add_option("--grid", grid, "stopped-set entry grid");
    CLI11_PARSE(app, argc, argv);

    const auto ws = plugs::wilson::field_Ws();
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<plugs::flowcore::Vec3> pts;
    for (int i = 0; i < n_points; ++i)
        pts.push_back(
            {1.05 + 1.9 * u(rng), 6.283185 * u(rng), -0.95 + 1.9 * u(rng)});

    plugs::flowcore::DivergenceReport dp, ds;
    const double t_dp =
        timed([&] { dp = plugs::flowcore::divergence_check(ws, pts); });
    const double t_ds =
        timed([&] { ds = plugs::flowcore::divergence_check_serial(ws, pts); });
    std::printf("divergence sweep  (%d points): parallel %.3fs  serial %.3fs  "
                "speedup %.2fx  identical %s\n",
                n_points, t_dp, t_ds, t_ds / t_dp,
                dp.max_rel_div == ds.max_rel_div ? "yes" : "NO");

    std::vector<plugs::flowcore::Vec3> entries;
    for (int i = 1; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            entries.push_back(
                {1.0 + 2.0 * i / grid, 6.283185306 * j / grid, -1.0});
    std::vector<plugs::flowcore::Vec3> sp, ss;
    const double t_sp = timed([&] {
        sp = plugs::bordism::stopped_set_estimate(ws, entries, 60.0, 1e-5);
    });
    const double t_ss = timed([&] {
        ss = plugs::bordism::stopped_set_estimate_serial(ws, entries, 60.0,
                                                         1e-5);
    });
    bool same = sp.size() == ss.size();
    for (std::size_t i = 0; same && i < sp.size(); ++i)
        same = sp[i].x == ss[i].x && sp[i].y == ss[i].y;
    std::printf("stopped-set sweep (%zu entries): parallel %.3fs  serial %.3fs  "
                "speedup %.2fx  identical %s\n",
                entries.size(), t_sp, t_ss, t_ss / t_sp, same ? "yes" : "NO");

    plugs::denjoy::Params p;
    p.C_v = 2.0;
    plugs::denjoy::GridSpec g;
    plugs::denjoy::PropertyIvReport rp, rs;
    plugs::denjoy::verify_property_iv(p, g);  // warm the slice cache
    const double t_rp =
        timed([&] { rp = plugs::denjoy::verify_property_iv(p, g); });
    const double t_rs =
        timed([&] { rs = plugs::denjoy::verify_property_iv_serial(p, g); });
    std::printf("property-iv sweep (%zu cells): parallel %.3fs  serial %.3fs  "
                "speedup %.2fx  identical %s\n",
                rp.n_points, t_rp, t_rs, t_rs / t_rp,
                rp.min_margin == rs.min_margin ? "yes" : "NO");
    return 0;
}
