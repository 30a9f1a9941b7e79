// plugctl: runs the verification suites and exports trajectories, contours,
// orbit statistics and calibration reports.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 usage error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plugs/denjoy.hpp"
#include "plugs/flowcore.hpp"
#include "plugs/suites.hpp"
#include "plugs/wilson.hpp"

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool write_file(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) return false;
    os << body;
    return static_cast<bool>(os);
}

std::string contours_csv(
    const std::vector<std::vector<std::array<double, 2>>>& cs) {
    std::string out = "contour,r,z\r\n";
    for (std::size_t k = 0; k < cs.size(); ++k)
        for (const auto& p : cs[k])
            out += std::to_string(k) + "," + fmt17(p[0]) + "," + fmt17(p[1]) +
                   "\r\n";
    return out;
}

std::string contours_svg(
    const std::vector<std::vector<std::array<double, 2>>>& cs) {
    // (r, z) in [1,3] x [-1,1] mapped to a 600 x 600 viewport
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
          "width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    for (const auto& c : cs) {
        os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
        for (const auto& p : c)
            os << 300.0 * (p[0] - 1.0) << "," << 300.0 * (1.0 - p[1]) << " ";
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume-preserving plug construction and verification"};
    std::string suite, emit, out_dir = ".", format = "csv", config_path;
    unsigned seed = 1;
    int grid = 0;
    double tol = 0, cv = 0;

    auto* so = app.add_option("--suite", suite,
                              "suite to run: profiles|diophantine|wilson|"
                              "vpfields|denjoy|pl|bordism|all");
    auto* eo = app.add_option(
        "--emit", emit, "artifact: contours|trajectory|denjoy_orbit|calibration");
    auto* seedo = app.add_option("--seed", seed, "random seed");
    auto* grido = app.add_option("--grid", grid, "grid density override");
    auto* tolo = app.add_option("--tol", tol, "tolerance override");
    auto* cvo = app.add_option("--cv", cv, "override the calibrated constant");
    auto* fo = app.add_option("--format", format, "csv|json|svg")
                   ->check(CLI::IsMember({"csv", "json", "svg"}));
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--config", config_path, "JSON config file (flags override)");

    CLI11_PARSE(app, argc, argv);

    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "plugctl: cannot read config " << config_path << "\n";
            return 3;
        }
        nlohmann::json j;
        try {
            is >> j;
        } catch (const std::exception& e) {
            std::cerr << "plugctl: bad config: " << e.what() << "\n";
            return 2;
        }
        if (!so->count() && j.contains("suite")) suite = j["suite"];
        if (!eo->count() && j.contains("emit")) emit = j["emit"];
        if (!seedo->count() && j.contains("seed")) seed = j["seed"];
        if (!grido->count() && j.contains("grid")) grid = j["grid"];
        if (!tolo->count() && j.contains("tol")) tol = j["tol"];
        if (!cvo->count() && j.contains("cv")) cv = j["cv"];
        if (!fo->count() && j.contains("format")) format = j["format"];
        if (j.contains("out")) out_dir = j["out"];
    }

    if (suite.empty() && emit.empty()) {
        std::cerr << "plugctl: nothing to do (need --suite or --emit)\n";
        return 2;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "plugctl: cannot create " << out_dir << "\n";
        return 3;
    }

    plugs::suites::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.grid = grid;
    cfg.tol = tol;
    cfg.c_v = cv;

    int status = 0;

    if (!suite.empty()) {
        std::vector<plugs::suites::SuiteReport> reports;
        try {
            if (suite == "all")
                reports = plugs::suites::run_all(cfg);
            else
                reports.push_back(plugs::suites::run_suite(suite, cfg));
        } catch (const std::invalid_argument& e) {
            std::cerr << "plugctl: " << e.what() << "\n";
            return 2;
        }
        for (const auto& r : reports) {
            std::cout << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << " ("
                      << r.checks.size() << " checks)\n";
            for (const auto& c : r.checks)
                if (!c.pass)
                    std::cout << "  FAIL " << c.name << ": " << c.detail
                              << "\n";
            if (!r.pass) status = 1;
        }
        const auto body = plugs::suites::reports_json(reports, cfg);
        if (!write_file(out_dir + "/report.json", body)) {
            std::cerr << "plugctl: cannot write report\n";
            return 3;
        }
    }

    if (emit == "contours") {
        const auto cs = plugs::wilson::f_contours(0.0, grid > 0 ? grid : 256);
        const bool ok =
            format == "svg"
                ? write_file(out_dir + "/contours.svg", contours_svg(cs))
                : write_file(out_dir + "/contours.csv", contours_csv(cs));
        if (!ok) return 3;
    } else if (emit == "trajectory") {
        const auto ws = plugs::wilson::field_Ws();
        plugs::flowcore::IntegrateOptions opt;
        opt.t_max = 500;
        opt.tol = 1e-11;
        const auto t = plugs::flowcore::integrate(ws, {1.5, 0.0, -1.0}, opt);
        if (!write_file(out_dir + "/trajectory.csv",
                        plugs::flowcore::trajectory_csv(t, ws.periodic)))
            return 3;
    } else if (emit == "denjoy_orbit") {
        const int iters = 10000;
        double x = 0.5 + 0.25 * static_cast<double>(seed % 97) / 97.0;
        const double x0 = x;
        nlohmann::ordered_json j;
        j["version"] = plugs::suites::kVersion;
        j["seed"] = seed;
        j["x0"] = x0;
        j["iterates"] = iters;
        nlohmann::ordered_json head = nlohmann::ordered_json::array();
        for (int i = 0; i < 100; ++i) {
            head.push_back(x);
            x = plugs::denjoy::denjoy_map(x).image;
        }
        j["orbit_head"] = head;
        j["rotation_number"] = plugs::denjoy::rotation_number(
            [](double y) { return plugs::denjoy::denjoy_map(y).image; }, x0,
            iters);
        if (!write_file(out_dir + "/denjoy_orbit.json", j.dump(2))) return 3;
    } else if (emit == "calibration") {
        const plugs::denjoy::GridSpec g;
        const auto cal = plugs::denjoy::calibrate_C(g, 1e-6);
        nlohmann::ordered_json j;
        j["version"] = plugs::suites::kVersion;
        j["C_v"] = cal.C_v;
        j["ratio_max"] = cal.ratio_max;
        j["witness"] = {cal.witness[0], cal.witness[1], cal.witness[2]};
        if (!write_file(out_dir + "/calibration.json", j.dump(2))) return 3;
    } else if (!emit.empty()) {
        std::cerr << "plugctl: unknown artifact " << emit << "\n";
        return 2;
    }

    return status;
}
