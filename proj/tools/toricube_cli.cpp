/**
 * toricube: exact computation with toric cubes from the command line.
 *
 * Subcommands read a JSON problem file (a monomial map or a binomial system)
 * and print JSON, except `poset` which prints a DOT Hasse diagram. Exit 0 on
 * success, 1 on malformed input (the message names the offending field), 2 on
 * an internal contract violation such as an oracle disagreement.
 */
#include <CLI11.hpp>

#include "toricube/cw.hpp"
#include "toricube/json_io.hpp"
#include "toricube/oracle.hpp"
#include "toricube/toric.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace toricube;
using io::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError("(file)", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

io::ProblemFile load(const std::string& path) { return io::parse_problem(slurp(path)); }

const MonomialMap& require_map(const io::ProblemFile& p) {
    if (!p.is_map()) throw io::ParseError("kind", "this command expects \"monomial_map\"");
    return p.map();
}

const BinomialSystem& require_system(const io::ProblemFile& p) {
    if (p.is_map()) throw io::ParseError("kind", "this command expects \"binomial_system\"");
    return p.system();
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int clamp_res(int res, int d) {
    // keep res^d within the sample cap
    int r = res;
    while (r > 1) {
        double size = 1.0;
        for (int k = 0; k < d; ++k) size *= static_cast<double>(r);
        if (size <= 1e6) break;
        --r;
    }
    return r;
}

struct VerifyOutcome {
    json checks = json::array();
    bool pass = true;

    void record(const std::string& name, bool ok, const std::string& detail = "") {
        json e;
        e["name"] = name;
        e["pass"] = ok;
        if (!detail.empty()) e["detail"] = detail;
        checks.push_back(std::move(e));
        pass = pass && ok;
    }
};

void verify_complex_checks(VerifyOutcome& out, const ToricCube& cube, int max_support_dim) {
    const CWComplex x = build_cw(cube, max_support_dim);
    const auto rep = regularity_report(x);
    out.record("cw_regularity", rep.pass,
               "cells=" + std::to_string(x.cells.size()) +
                   " refinement_events=" + std::to_string(x.refinement_events));
    bool closures_ok = true;
    try {
        for (const auto& c : x.cells) (void)cell_closure_in(x, c);
    } catch (const std::exception&) {
        closures_ok = false;
    }
    out.record("cw_boundary_subcomplex", closures_ok);
}

void verify_stratum_fm(VerifyOutcome& out, const ToricCube& cube, int max_support_dim) {
    // independent Fourier-Motzkin route for every present stratum cone
    bool ok = true;
    for (const auto& st : strata(cube, max_support_dim)) {
        if (!st.present) continue;
        const auto fm = oracle::fm_project(cube.log_cone().ineqs(), cube.n(), st.support);
        for (const auto& r : st.cone->rays()) {
            std::vector<Rat> y;
            for (std::size_t q = 0; q < r.size(); ++q) y.push_back(Rat(r[q]));
            if (!oracle::fm_cone_contains(fm, y)) ok = false;
        }
        const auto brute = oracle::brute_extreme_rays(fm, static_cast<int>(st.support.size()));
        if (brute != st.cone->rays()) ok = false;
    }
    out.record("stratum_cones_vs_fourier_motzkin", ok);
}

int run_verify(const io::ProblemFile& problem, int res, int max_support_dim) {
    VerifyOutcome out;
    if (problem.is_map()) {
        const MonomialMap& m = problem.map();
        const int r = clamp_res(res, m.d);
        const auto grid = oracle::grid_image(m, r);
        const BinomialSystem sys = implicitize(m, max_support_dim);
        const auto bad = oracle::check_sample(sys, grid);
        out.record("implicitize_sound_on_grid", bad.empty(),
                   "points=" + std::to_string(grid.points.size()) + " res=" + std::to_string(r));
        std::set<std::vector<int>> achievable = oracle::achievable_supports(m);
        bool flags_ok = true;
        for (const auto& st : strata(ToricCube::from_map(m), max_support_dim))
            if (st.present != (achievable.count(st.support) == 1)) flags_ok = false;
        out.record("strata_match_achievable_supports", flags_ok);
        out.record("parametrize_round_trip",
                   cone_equal(log_cone_of_map(parametrize(sys)), log_cone_of_map(m)));
        verify_complex_checks(out, ToricCube::from_map(m), max_support_dim);
        verify_stratum_fm(out, ToricCube::from_map(m), max_support_dim);
    } else {
        const BinomialSystem& s = problem.system();
        const BinomialSystem cubified = cubify(s, max_support_dim);
        const Cone d = cone_of_system(s);
        bool valid = true;
        for (const auto& q : cubified.ineqs)
            for (const auto& ray : d.rays())
                if (dot(q.u - q.v, ray) < 0) valid = false;
        out.record("cubify_valid_on_log_cone", valid);
        out.record("cubify_idempotent", system_equiv(cubified, cubify(cubified, max_support_dim),
                                                     max_support_dim));
        const MonomialMap par = parametrize(s);
        const int r = clamp_res(res, std::max(par.d, 1));
        bool sound = true;
        if (par.d > 0) {
            const auto grid = oracle::grid_image(par, r);
            sound = oracle::check_sample(cubified, grid).empty();
        }
        out.record("parametrization_lands_in_cubified_system", sound);
        verify_complex_checks(out, ToricCube::from_system(s), max_support_dim);
        verify_stratum_fm(out, ToricCube::from_system(s), max_support_dim);
    }
    json j;
    j["pass"] = out.pass;
    j["checks"] = out.checks;
    print_json(j);
    return out.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation with toric cubes"};
    app.require_subcommand(1);

    std::string path;
    int max_support_dim = kDefaultMaxSupportDim;
    int res = 4;
    bool char_domains = false, scaled_rays = false, dot = true;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("problem", path, "JSON problem file")->required();
        cmd->add_option("--max-support-dim", max_support_dim,
                        "cap on n for the 2^n support enumerations");
    };

    CLI::App* implicitize_cmd = app.add_subcommand("implicitize", "binomial system of a map's image");
    CLI::App* parametrize_cmd = app.add_subcommand("parametrize", "monomial map onto a system's cube");
    CLI::App* cubify_cmd = app.add_subcommand("cubify", "system cutting out the closure of the positive part");
    CLI::App* iscube_cmd = app.add_subcommand("is-cube", "does the system already cut out a toric cube?");
    CLI::App* strata_cmd = app.add_subcommand("strata", "per-support presence and stratum cones");
    CLI::App* cw_cmd = app.add_subcommand("cw", "CW cell decomposition");
    CLI::App* poset_cmd = app.add_subcommand("poset", "Hasse diagram of the closure poset");
    CLI::App* check_cmd = app.add_subcommand("check", "regularity report of the CW complex");
    CLI::App* verify_cmd = app.add_subcommand("verify", "independent oracle cross-checks");

    for (CLI::App* cmd : {implicitize_cmd, parametrize_cmd, cubify_cmd, iscube_cmd, strata_cmd,
                          cw_cmd, poset_cmd, check_cmd, verify_cmd})
        add_common(cmd);
    cw_cmd->add_flag("--char-domains", char_domains, "include characteristic-domain data per cell");
    cw_cmd->add_flag("--scaled-rays", scaled_rays,
                     "rescale rays to equal coordinate sums inside characteristic domains");
    poset_cmd->add_flag("--dot", dot, "emit DOT (default)");
    verify_cmd->add_option("--res", res, "oracle grid resolution (default 4)");

    CLI11_PARSE(app, argc, argv);

    try {
        const io::ProblemFile problem = load(path);
        if (implicitize_cmd->parsed()) {
            print_json(io::system_to_json(implicitize(require_map(problem), max_support_dim)));
        } else if (parametrize_cmd->parsed()) {
            print_json(io::map_to_json(parametrize(require_system(problem))));
        } else if (cubify_cmd->parsed()) {
            print_json(io::system_to_json(cubify(require_system(problem), max_support_dim)));
        } else if (iscube_cmd->parsed()) {
            json j;
            j["is_cube"] = is_cube(require_system(problem), max_support_dim);
            print_json(j);
        } else if (strata_cmd->parsed()) {
            const ToricCube cube = problem.cube();
            print_json(io::strata_to_json(cube.n(), strata(cube, max_support_dim)));
        } else if (cw_cmd->parsed()) {
            print_json(io::complex_to_json(build_cw(problem.cube(), max_support_dim), char_domains,
                                           scaled_rays));
        } else if (poset_cmd->parsed()) {
            std::cout << io::poset_dot(build_cw(problem.cube(), max_support_dim));
        } else if (check_cmd->parsed()) {
            print_json(io::report_to_json(regularity_report(build_cw(problem.cube(), max_support_dim))));
        } else if (verify_cmd->parsed()) {
            return run_verify(problem, res, max_support_dim);
        }
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal contract violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
