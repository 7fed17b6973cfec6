/**
 * End-to-end checks of the toricube binary: golden outputs, determinism
 * across repeated runs, exit codes. Usage: cli_integration <binary> <problems_dir>
 */
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: cli_integration <binary> <problems_dir>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string dir = argv[2];
    using nlohmann::json;

    // golden: cw on the (xy, yz, xz) map
    {
        auto r = run(bin + " cw " + dir + "/map_xy_yz_xz.json");
        expect(r.exit_code == 0, "cw exits 0");
        json j = json::parse(r.out);
        expect(j["f_vector"] == json::array({5, 6, 3, 1}), "cw f-vector is [5,6,3,1]");
        expect(j["cell_count"] == 15, "cw has 15 cells");
        expect(j["euler"] == 1, "cw euler is 1");
        auto again = run(bin + " cw " + dir + "/map_xy_yz_xz.json");
        expect(again.out == r.out, "cw output is byte-identical across runs");
    }
    // golden: cubify the 4d precube and check is-cube on both
    {
        auto r = run(bin + " is-cube " + dir + "/system_precube_4d.json");
        expect(r.exit_code == 0, "is-cube exits 0");
        expect(json::parse(r.out)["is_cube"] == false, "the 4d precube is not a cube");

        auto c = run(bin + " cubify " + dir + "/system_precube_4d.json");
        expect(c.exit_code == 0, "cubify exits 0");
        const std::string tmp = "/tmp/toricube_cubified.json";
        std::ofstream(tmp) << c.out;
        auto r2 = run(bin + " is-cube " + tmp);
        expect(json::parse(r2.out)["is_cube"] == true, "the cubified system is a cube");
    }
    // golden: parametrize the 4d precube (5 columns)
    {
        auto r = run(bin + " parametrize " + dir + "/system_precube_4d.json");
        json j = json::parse(r.out);
        expect(j["d"] == 5, "parametrize returns 5 parameters");
        expect(j["n"] == 4, "parametrize keeps n=4");
    }
    // poset DOT output
    {
        auto r = run(bin + " poset --dot " + dir + "/map_xy_yz_xz.json");
        expect(r.exit_code == 0, "poset exits 0");
        expect(r.out.rfind("digraph {\n  rankdir=BT;\n", 0) == 0, "poset emits a BT digraph");
        const auto nodes = std::count(r.out.begin(), r.out.end(), '[');
        expect(nodes == 15, "poset has 15 nodes");
    }
    // check command
    {
        auto r = run(bin + " check " + dir + "/map_t1t2t4_t2t3_t3t4.json");
        expect(r.exit_code == 0, "check exits 0");
        expect(json::parse(r.out)["pass"] == true, "regularity report passes");
    }
    // verify on every golden input
    for (const std::string name :
         {"map_xy_yz_xz.json", "system_precube_4d.json", "map_t1t2t4_t2t3_t3t4.json",
          "map_x_x2y.json", "map_x_xy2.json", "map_x2y_x3y2.json", "map_identity_1d.json"}) {
        auto r = run(bin + " verify --res 4 " + dir + "/" + name);
        expect(r.exit_code == 0, "verify exits 0 on " + name);
    }
    // strata golden: support {3,4} present with rays (0,1),(1,1)
    {
        auto r = run(bin + " strata " + dir + "/system_precube_4d.json");
        json j = json::parse(r.out);
        bool found = false;
        for (const auto& st : j["strata"])
            if (st["support"] == json::array({3, 4}))
                found = st["present"] == true && st["rays"] == json::parse("[[0,1],[1,1]]");
        expect(found, "stratum {3,4} present with rays (0,1),(1,1)");
    }
    // the empty system is already a cube
    {
        const std::string tmp = "/tmp/toricube_empty.json";
        std::ofstream(tmp) << R"({"kind": "binomial_system", "n": 2, "inequalities": []})";
        auto r = run(bin + " is-cube " + tmp);
        expect(r.exit_code == 0, "is-cube on the empty system exits 0");
        expect(json::parse(r.out)["is_cube"] == true, "the empty system is a cube");
    }
    // malformed input: exit 1 and the message names the field
    {
        const std::string tmp = "/tmp/toricube_bad.json";
        std::ofstream(tmp) << R"({"kind": "monomial_map", "n": 2, "d": 1, "exponents": [[1]]})";
        auto r = run(bin + " implicitize " + tmp);
        expect(r.exit_code == 1, "malformed input exits 1");
        std::ofstream(tmp) << R"({"kind": "binomial_system", "n": 1, "inequalities": []})";
        auto r2 = run(bin + " implicitize " + tmp);
        expect(r2.exit_code == 1, "wrong problem kind exits 1");
    }
    // char domains flag
    {
        auto r = run(bin + " cw --char-domains " + dir + "/map_t1t2t4_t2t3_t3t4.json");
        json j = json::parse(r.out);
        bool found_nine = false;
        for (const auto& cell : j["cells"])
            if (cell.contains("char_domain") && cell["char_domain"]["poset"].size() == 9)
                found_nine = true;
        expect(found_nine, "cw --char-domains exposes the nine-element poset");
        auto scaled = run(bin + " cw --char-domains --scaled-rays " + dir + "/map_t1t2t4_t2t3_t3t4.json");
        expect(scaled.exit_code == 0, "cw --scaled-rays exits 0");
        expect(scaled.out != r.out, "scaled rays change the characteristic domains");
    }

    std::cout << (failures == 0 ? "all CLI checks passed\n" : "CLI checks FAILED\n");
    return failures == 0 ? 0 : 1;
}
