#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(SINGCOB_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "singcob_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_cfg(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

Json load(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    Json j;
    in >> j;
    return j;
}

std::string dump_without_timestamp(Json j) {
    j["meta"].erase("generated_at");
    return j.dump();
}

} // namespace

TEST_CASE("chain-verify on the figure eight") {
    fs::path dir = scratch();
    write_cfg(dir / "fe.cfg", "model = figure_eight\nr = 2\n");
    CHECK(run("chain-verify --config " + (dir / "fe.cfg").string() + " --out " + dir.string()) ==
          0);
    Json rep = load(dir / "chain-verify.json");
    CHECK(rep["schema_version"] == 1);
    CHECK(rep["results"]["parity_chain"]["counts"] == Json::array({4, 2}));
    CHECK(rep["results"]["parity_chain"]["chain_verdict"] == "pass");
    CHECK(rep["results"]["parity_chain"]["genericity"]["verdict"] == "generic");
}

TEST_CASE("multipoints and trace on the figure eight") {
    fs::path dir = scratch();
    write_cfg(dir / "fe.cfg", "model = figure_eight\nr = 2\n");
    std::string common = " --config " + (dir / "fe.cfg").string() + " --out " + dir.string();
    CHECK(run("multipoints" + common) == 0);
    Json mp = load(dir / "multipoints.json");
    CHECK(mp["results"]["M_r"]["count"] == 2);
    CHECK(mp["results"]["N_r"]["count"] == 1);
    CHECK(mp["results"]["covering_check"] == "pass");
    // every point carries its residual and the solver provenance block
    for (const auto& p : mp["results"]["M_r"]["points"]) CHECK(p.contains("residual"));
    CHECK(mp["results"]["M_r"]["provenance"].contains("grid_resolution"));

    CHECK(run("trace-cobordism" + common) == 0);
    Json tr = load(dir / "trace-cobordism.json");
    CHECK(tr["results"]["level_2"]["arc_count"] == 3);
    CHECK(tr["results"]["level_2"]["pairing_verdict"] == "pass");
}

TEST_CASE("strata with svg output") {
    fs::path dir = scratch();
    write_cfg(dir / "fe.cfg", "model = figure_eight\nr = 2\nsvg = true\n");
    CHECK(run("strata --config " + (dir / "fe.cfg").string() + " --out " + dir.string()) == 0);
    CHECK(load(dir / "strata.json")["results"]["Sigma_1^1"]["count"] == 4);
    std::ifstream svg(dir / "strata.svg");
    REQUIRE(svg.good());
    std::stringstream buf;
    buf << svg.rdbuf();
    CHECK(buf.str().find("<svg") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    fs::path dir = scratch();
    write_cfg(dir / "bad.cfg", "model = no_such_model\n");
    CHECK(run("chain-verify --config " + (dir / "bad.cfg").string()) == 2);
    write_cfg(dir / "garbage.cfg", "not a config\n");
    CHECK(run("chain-verify --config " + (dir / "garbage.cfg").string()) == 2);
    CHECK(run("chain-verify") == 2);      // no model
    CHECK(run("sweep --count 5") == 2);   // seed mandatory for sweeps
    CHECK(run("") == 2);                  // missing subcommand
}

TEST_CASE("sweep runs and reports rejections") {
    fs::path dir = scratch();
    CHECK(run("sweep --seed 7 --count 12 --out " + dir.string()) == 0);
    Json rep = load(dir / "sweep.json");
    CHECK(rep["results"]["samples"].size() == 12);
    CHECK(rep["results"]["chain_failures"] == 0);
    CHECK(rep["results"]["covering_failures"] == 0);
    CHECK(rep["results"].contains("rejection_rate"));
}

TEST_CASE("identical seed gives byte-identical reports modulo timestamp") {
    fs::path a = scratch() / "a", b = scratch() / "b";
    fs::create_directories(a);
    fs::create_directories(b);
    CHECK(run("sweep --seed 99 --count 8 --out " + a.string()) == 0);
    CHECK(run("sweep --seed 99 --count 8 --out " + b.string()) == 0);
    CHECK(dump_without_timestamp(load(a / "sweep.json")) ==
          dump_without_timestamp(load(b / "sweep.json")));

    write_cfg(a / "fe.cfg", "model = figure_eight\nr = 2\n");
    CHECK(run("chain-verify --config " + (a / "fe.cfg").string() + " --out " + a.string()) == 0);
    CHECK(run("chain-verify --config " + (a / "fe.cfg").string() + " --out " + b.string()) == 0);
    CHECK(dump_without_timestamp(load(a / "chain-verify.json")) ==
          dump_without_timestamp(load(b / "chain-verify.json")));
}

TEST_CASE("normal-form subcommand") {
    fs::path dir = scratch();
    write_cfg(dir / "nf.cfg", "nf_r = 3\nnf_k = 1\nnf_j = 1\nnf_t = 1\nnf_tu = -1\nnf_tv = 1\n");
    CHECK(run("normal-form --config " + (dir / "nf.cfg").string() + " --out " + dir.string()) ==
          0);
    Json rep = load(dir / "normal-form.json");
    CHECK(rep["results"]["parametrize_membership"] == "pass");
    CHECK(rep["results"]["solve_pair"] == "pass");
    CHECK(rep["results"]["solve_pair_top"] == "pass");
    CHECK(rep["results"]["boundary_limit"] == "pass");
    CHECK(rep["results"]["top_fiber_singleton"] == "pass");
}
