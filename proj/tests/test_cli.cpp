// Golden-path tests for the command-line frontend: every CLI output must be
// byte-identical (JSON) or row-identical (CSV) to what the library produces
// directly, and exit codes follow the documented contract.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "fixtures.hpp"
#include "glv/serialize.hpp"

using namespace glv;

namespace {

struct TempDir {
    std::string path;
    TempDir() {
        char tmpl[] = "/tmp/glv_cli_XXXXXX";
        path = mkdtemp(tmpl);
    }
    std::string file(const std::string& name) const { return path + "/" + name; }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(GLV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("analyze matches the library byte for byte") {
    TempDir dir;
    const EGraph tri = fixtures::triangle();
    save_json_file(dir.file("tri.json"), graph_to_json(tri));

    REQUIRE(run_cli("analyze " + dir.file("tri.json") + " -o " + dir.file("report.json")) == 0);
    const std::string expected =
        dump_json(structural_report_to_json(structural_report(tri)));
    CHECK(slurp(dir.file("report.json")) == expected);

    const json parsed = json::parse(slurp(dir.file("report.json")));
    CHECK(parsed["deficiency"] == 0);
    CHECK(parsed["weakly_reversible"] == true);
}

TEST_CASE("analyze exit codes: parse and validation errors") {
    TempDir dir;
    write_file(dir.file("broken.json"), "{ not json");
    CHECK(run_cli("analyze " + dir.file("broken.json")) == 2);

    write_file(dir.file("selfloop.json"),
               R"({"dimension": 1, "vertices": [[0],[1]],
                   "edges": [{"src": 0, "dst": 0, "weight": 1}]})");
    CHECK(run_cli("analyze " + dir.file("selfloop.json")) == 3);

    CHECK(run_cli("analyze " + dir.file("missing.json")) == 2);
    CHECK(run_cli("bogus-subcommand") == 2);
}

TEST_CASE("balance matches the library on all three outcomes") {
    TempDir dir;
    const EGraph tri = fixtures::triangle();
    const EGraph single = fixtures::single_edge();
    save_json_file(dir.file("tri.json"), graph_to_json(tri));
    save_json_file(dir.file("single.json"), graph_to_json(single));

    REQUIRE(run_cli("balance " + dir.file("tri.json") + " -o " + dir.file("b1.json")) == 0);
    CHECK(slurp(dir.file("b1.json")) == dump_json(balance_outcome_to_json(tri)));
    CHECK(json::parse(slurp(dir.file("b1.json")))["type"] == "complex_balanced");

    REQUIRE(run_cli("balance " + dir.file("single.json") + " -o " + dir.file("b2.json")) == 0);
    CHECK(slurp(dir.file("b2.json")) == dump_json(balance_outcome_to_json(single)));
    CHECK(json::parse(slurp(dir.file("b2.json")))["type"] == "stiemke");
}

TEST_CASE("realize reproduces the worked example end to end") {
    TempDir dir;
    save_json_file(dir.file("sys.json"), system_to_json(fixtures::example_system()));
    write_file(dir.file("verts.json"),
               R"([[0,0],[1,0],[1,1],[0,1],[-2,0],[0,-1],[2,0],[0,1.5]])");

    REQUIRE(run_cli("realize --system " + dir.file("sys.json") + " --vertices " +
                    dir.file("verts.json") + " --x-star 1,1 -o " + dir.file("graph.json") +
                    " --report " + dir.file("report.json")) == 0);

    const json report = json::parse(slurp(dir.file("report.json")));
    CHECK(report["feasible"] == true);
    CHECK(report["balanced_at"][0] == 1.0);

    // The emitted graph file loads and regenerates the input system.
    const EGraph realized = load_graph(dir.file("graph.json"));
    const GlvSystem regenerated = glv_from_graph(realized);
    const GlvSystem target = fixtures::example_system();
    for (const GlvTerm& want : target.terms) {
        bool matched = false;
        for (const GlvTerm& got : regenerated.terms)
            if ((got.exponent - want.exponent).lpNorm<Eigen::Infinity>() <= 1e-12)
                matched = (got.coeffs - want.coeffs).lpNorm<Eigen::Infinity>() <= 1e-7;
        CHECK(matched);
    }
}

TEST_CASE("realize infeasibility exits 4 with a report") {
    TempDir dir;
    GlvSystem sys;
    sys.dimension = 1;
    sys.terms.push_back({Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)});
    save_json_file(dir.file("sys.json"), system_to_json(sys));
    write_file(dir.file("verts.json"), "[[0],[1]]");
    CHECK(run_cli("realize --system " + dir.file("sys.json") + " --vertices " +
                  dir.file("verts.json") + " --report " + dir.file("report.json")) == 4);
    const json report = json::parse(slurp(dir.file("report.json")));
    CHECK(report["feasible"] == false);
    CHECK(report["infeasibility_direction"].is_array());
}

TEST_CASE("scaling subcommand") {
    TempDir dir;
    write_file(dir.file("good.json"), R"({"r": [1, 1], "A": [[-2, 1], [1, -2]]})");
    write_file(dir.file("bad.json"), R"({"r": [1, 1], "A": [[-1, 2], [2, -1]]})");

    REQUIRE(run_cli("scaling " + dir.file("good.json") + " -o " + dir.file("d.json")) == 0);
    const json d = json::parse(slurp(dir.file("d.json")));
    CHECK(d["feasible"] == true);
    CHECK(d["d"][0].get<double>() == doctest::Approx(1.0));

    CHECK(run_cli("scaling " + dir.file("bad.json") + " -o " + dir.file("d2.json")) == 4);
    CHECK(json::parse(slurp(dir.file("d2.json")))["feasible"] == false);
}

TEST_CASE("simulate writes the library's CSV rows and summary") {
    TempDir dir;
    const EGraph tri = fixtures::triangle();
    save_json_file(dir.file("tri.json"), graph_to_json(tri));

    REQUIRE(run_cli("simulate " + dir.file("tri.json") + " --x0 2,1,0.5 --t-end 50 -o " +
                    dir.file("traj.csv") + " --summary " + dir.file("summary.json")) == 0);

    // Library path with identical settings.
    const auto cert = find_balanced_state(tri);
    const SubspaceBasis basis = stoichiometric_basis(tri);
    IntegrateOptions opts;
    opts.t_end = 50.0;
    const Trajectory traj =
        integrate(ScaledSystem(tri), Eigen::Vector3d(2, 1, 0.5), opts, &*cert, &basis);
    std::ostringstream expected_csv;
    write_trajectory_csv(expected_csv, traj);
    CHECK(slurp(dir.file("traj.csv")) == expected_csv.str());
    CHECK(slurp(dir.file("summary.json")) == dump_json(trajectory_summary_to_json(traj)));

    const json summary = json::parse(slurp(dir.file("summary.json")));
    REQUIRE(summary["converged_to"].is_array());
    for (int i = 0; i < 3; ++i)
        CHECK(summary["converged_to"][i].get<double>() == doctest::Approx(1.0).epsilon(1e-6));

    // Zero component in x0 is a validation error.
    CHECK(run_cli("simulate " + dir.file("tri.json") + " --x0 1,0,1") == 3);
}

TEST_CASE("simulate ensemble is seed-deterministic") {
    TempDir dir;
    save_json_file(dir.file("tri.json"), graph_to_json(fixtures::triangle()));
    REQUIRE(run_cli("simulate " + dir.file("tri.json") +
                    " --ensemble 3 --seed 7 --t-end 50 --summary " + dir.file("s1.json")) == 0);
    REQUIRE(run_cli("simulate " + dir.file("tri.json") +
                    " --ensemble 3 --seed 7 --t-end 50 --summary " + dir.file("s2.json")) == 0);
    CHECK(slurp(dir.file("s1.json")) == slurp(dir.file("s2.json")));

    const json members = json::parse(slurp(dir.file("s1.json")));
    REQUIRE(members.is_array());
    CHECK(members.size() == 3);
    for (const json& member : members) CHECK(member["failure"].is_null());
}

TEST_CASE("simulate a bare system file exits 5 on blow-up") {
    TempDir dir;
    GlvSystem sys;
    sys.dimension = 1;
    sys.terms.push_back({Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd::Ones(1)});
    save_json_file(dir.file("sys.json"), system_to_json(sys));
    CHECK(run_cli("simulate --system " + dir.file("sys.json") +
                  " --x0 5 --t-end 100 -o " + dir.file("t.csv") + " --summary " +
                  dir.file("s.json")) == 5);
    const json summary = json::parse(slurp(dir.file("s.json")));
    // Finite-time blow-up ends in one of the two numeric failure modes.
    CHECK((summary["failure"] == "Overflow" || summary["failure"] == "StepUnderflow"));
    CHECK(summary["final_state"].is_array()); // last good state is preserved
}
