#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowdet/curves.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace slowdet;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(const std::string& args) {
    std::string cmd = std::string(SLOWDET_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "slowdet_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("certify") {
    Run ok = run("certify spiral_1_1");
    CHECK(ok.code == 0);
    CHECK(ok.json()["status"] == "pass");

    CurveSpec c = catalog_curve("spiral_1_1");
    c.cert->A = Real(0.5);
    c.name = "shrunk";
    fs::path spec = scratch("shrunk.json");
    std::ofstream(spec) << curve_to_json(c).dump(2);
    Run bad = run("certify " + spec.string());
    CHECK(bad.code == 2);
    auto j = bad.json();
    CHECK(j["status"] == "fail");
    CHECK(j["reports"][0].contains("first_violation"));

    Run compact = run("certify catalog:exp2_graph");
    CHECK(compact.code == 0);
    CHECK(compact.json()["status"] == "not applicable");
}

TEST_CASE("bound") {
    Run r = run("bound spiral_1_1 --T 1000");
    CHECK(r.code == 0);
    auto j = r.json();
    CHECK(j["theorem"]["shape"]["log_T"] == "9");
    CHECK(j["theorem"]["shape"]["loglog_T"] == "0");
    CHECK(j.contains("curve_bound"));
    CHECK(run("bound spiral_1_2 --T 5").json()["theorem"]["shape"]["log_T"] == "13");
}

TEST_CASE("scan with csv sidecar") {
    fs::path csv = scratch("exp2.csv");
    Run r = run("scan exp2_graph --T 64 --csv " + csv.string());
    CHECK(r.code == 0);
    CHECK(r.json()["certified"] == 13);
    CHECK(r.json()["candidates"] == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("x_num,x_den,y_num,y_den,height,parameter,status", 0) == 0);
    CHECK(text.find("6,1,64,1,64,") != std::string::npos);

    Run w = run("scan sin_pi_graph --T 10 --window 0,3");
    CHECK(w.code == 0);
    CHECK(w.json()["certified"] >= 4);
}

TEST_CASE("cover and audit") {
    Run c = run("cover exp2_slow --T 100");
    CHECK(c.code == 0);
    CHECK(c.json()["plan"]["verified"] == true);
    Run b = run("bezout-check spiral_1_1 --trials 20");
    CHECK(b.code == 0);
    CHECK(b.json()["audit"]["violations"] == 0);
}

TEST_CASE("reports are reproducible") {
    fs::path tsv = scratch("run.tsv");
    fs::path out1 = scratch("run1.json"), out2 = scratch("run2.json");
    Run a = run("--seed 4 --out " + out1.string() + " report exp2_slow --T 10 --T 50 --bezout-trials 5 --tsv " +
                tsv.string());
    Run b = run("--seed 4 --out " + out2.string() + " report exp2_slow --T 10 --T 50 --bezout-trials 5");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(slurp(out1) == slurp(out2));
    std::string rows = slurp(tsv);
    CHECK(rows.rfind("curve\tT\tcertified", 0) == 0);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
    auto j = nlohmann::json::parse(slurp(out1));
    CHECK(j["config"]["seed"] == 4);
    CHECK(j["runs"].size() == 2);
    CHECK(!j["runs"][0].contains("timings"));
}

TEST_CASE("config file") {
    fs::path cfg = scratch("opts.toml");
    std::ofstream(cfg) << "precision = 192\nseed = 9\n";
    Run r = run("--config " + cfg.string() + " bound zeta --T 10");
    CHECK(r.code == 0);
    CHECK(r.json()["config"]["precision"] == 192);
    CHECK(r.json()["config"]["seed"] == 9);
}

TEST_CASE("input errors") {
    CHECK(run("scan no_such_curve --T 10").code == 3);
    CHECK(run("bound zeta").code == 3);
    CHECK(run("bound zeta --T 0").code == 3);
    CHECK(run("bound zeta --T abc").code == 3);
    CHECK(run("frobnicate zeta").code == 3);
    fs::path bad = scratch("bad.json");
    std::ofstream(bad) << "{ not json";
    CHECK(run("certify " + bad.string()).code == 3);
    CHECK(run("--help").code == 0);
}
