#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

int counter = 0;

RunResult run_cli(const std::string& args) {
    const std::string tmp = "cli_out_" + std::to_string(counter++) + ".txt";
    const std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " > " + tmp + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(raw);
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    std::remove(tmp.c_str());
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 64") {
    CHECK(run_cli("").exit_code == 64);
    CHECK(run_cli("no-such-command").exit_code == 64);
    CHECK(run_cli("trace").exit_code == 64);                       // missing --model
    CHECK(run_cli("trace --model nonsense").exit_code == 64);      // bad grammar
    CHECK(run_cli("classify --model cyclic:2+cyclic:3 --lambda banana").exit_code == 64);
    CHECK(run_cli("trace --model cyclic:2+cyclic:3 --rays 4").exit_code == 64);
}

TEST_CASE("radius prints the frozen outer radius") {
    const auto res = run_cli("radius --model cyclic:2+cyclic:3");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("1.9714832") != std::string::npos);
    CHECK(res.output.find("0.4846403") != std::string::npos);

    // a single cyclic(2) summand: both real rays stop at the unit atoms
    const auto single = run_cli("radius --model cyclic:2");
    CHECK(single.exit_code == 0);
    CHECK(single.output.find("r=1") != std::string::npos);
}

TEST_CASE("classify output") {
    const auto res = run_cli("classify --model cyclic:2+cyclic:3 --lambda 5+0i");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("classification=Outside") != std::string::npos);
    CHECK(res.output.find("phi=0.0824681915") != std::string::npos);
}

TEST_CASE("trace writes csv, json and svg") {
    const auto res = run_cli(
        "trace --model cyclic:2+cyclic:3+cyclic:4 --rays 36 --out t.csv --json t.json "
        "--svg t.svg");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("closed=yes") != std::string::npos);

    const std::string csv = read_file("t.csv");
    CHECK(csv.rfind("theta,r,x,y,phi_residual,solver_residual\n", 0) == 0);
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 37);  // header + one row per ray

    const auto parsed = nlohmann::json::parse(read_file("t.json"));
    CHECK(parsed["model"] == "cyclic:2+cyclic:3+cyclic:4");
    CHECK(parsed["rays"] == 36);
    CHECK(parsed["samples"].size() == 36);
    CHECK(parsed["gaps"].empty());
    CHECK(parsed["samples"][0].contains("phi_residual"));

    const std::string svg = read_file("t.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);

    std::remove("t.csv");
    std::remove("t.json");
    std::remove("t.svg");
}

TEST_CASE("traces with gap rays exit with 2") {
    const auto res = run_cli("trace --model cyclic:2 --rays 16");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("closed=no") != std::string::npos);

    // this border passes through the origin, so near-vertical rays are gaps
    const auto lobes = run_cli("trace --model cyclic:2+cyclic:3 --rays 36");
    CHECK(lobes.exit_code == 2);
    CHECK(lobes.output.find("closed=no") != std::string::npos);
}

TEST_CASE("moments with oracle check") {
    const auto res = run_cli("moments --model cyclic:2+cyclic:3 --order 8 --check-oracle");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("m0=1") != std::string::npos);
    CHECK(res.output.find("oracle=MATCH") != std::string::npos);

    // beyond the oracle cap the run fails numerically
    CHECK(run_cli("moments --model cyclic:2+cyclic:3 --order 25 --check-oracle").exit_code ==
          1);
}

TEST_CASE("density and atoms commands") {
    const auto dens = run_cli("density --model arcsine --from -0.2 --to 0.2 --step 0.1");
    CHECK(dens.exit_code == 0);
    CHECK(dens.output.rfind("t,density\n", 0) == 0);

    const auto atoms = run_cli("atoms --model cyclic:2 --from -1.5 --to 1.5 --step 0.01");
    CHECK(atoms.exit_code == 0);
    CHECK(atoms.output.rfind("location,mass\n", 0) == 0);
    {
        std::istringstream rows(atoms.output.substr(atoms.output.find('\n') + 1));
        std::string line;
        int found = 0;
        while (std::getline(rows, line)) {
            double loc = 0.0, mass = 0.0;
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &loc, &mass) == 2);
            CHECK(std::abs(std::abs(loc) - 1.0) < 1e-6);
            CHECK(std::abs(mass - 0.5) < 1e-6);
            ++found;
        }
        CHECK(found == 2);
    }

    // density of a non-self-adjoint model is a usage error
    CHECK(run_cli("density --model cyclic:3").exit_code == 64);
}

TEST_CASE("identity check passes at machine precision") {
    const auto res = run_cli("identity-check --m 2 --n 3 --samples 20 --seed 7");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("samples=20") != std::string::npos);
    CHECK(res.output.find("max_residual=") != std::string::npos);
}

TEST_CASE("eigmethod emits admissible rows") {
    const auto res = run_cli("eigmethod --points 8 --radius 2.5");
    CHECK(res.exit_code == 0);
    CHECK(res.output.rfind("x,y,s_re,s_im,residual,indicator,admissible\n", 0) == 0);
    int lines = 0;
    for (char c : res.output)
        if (c == '\n') ++lines;
    CHECK(lines > 1);
}

TEST_CASE("runs are deterministic") {
    const std::string args = "trace --model cyclic:2+cyclic:3+cyclic:4 --rays 24 --out d1.csv";
    CHECK(run_cli(args).exit_code == 0);
    const std::string first = read_file("d1.csv");
    std::remove("d1.csv");
    CHECK(run_cli(args).exit_code == 0);
    const std::string second = read_file("d1.csv");
    std::remove("d1.csv");
    CHECK(!first.empty());
    CHECK(first == second);
}
