#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "gateimpact/cli.hpp"
#include "gateimpact/qasm.hpp"

namespace fs = std::filesystem;
using namespace gateimpact;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gate-impact-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int run_binary(const std::string& args) {
    const std::string cmd = std::string(GATE_IMPACT_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

cli::RunConfig config_for(const fs::path& input, const fs::path& out) {
    cli::RunConfig c;
    c.input = input.string();
    c.out_dir = out.string();
    c.shots = 2000;
    c.seed = 7;
    return c;
}

}  // namespace

TEST_CASE("bench writes parseable circuits") {
    const fs::path dir = scratch("bench");
    std::ostringstream out, err;
    cli::RunConfig cfg;
    cfg.out_dir = dir.string();
    CHECK(cli::cmd_bench(cfg, {.family = "qft", .n = 3, .target = "101"}, out, err) == cli::kOk);
    auto parsed = parse_qasm(slurp(dir / "qft_3.qasm"));
    REQUIRE(parsed.ok());
    CHECK(parsed.circuit->ops.size() == 39);

    CHECK(cli::cmd_bench(cfg, {.family = "ghz", .n = 4}, out, err) == cli::kOk);
    CHECK(parse_qasm(slurp(dir / "ghz_4.qasm")).ok());
    CHECK(cli::cmd_bench(cfg, {.family = "crosstalk"}, out, err) == cli::kOk);
    CHECK(fs::exists(dir / "crosstalk_3.qasm"));

    CHECK(cli::cmd_bench(cfg, {.family = "qft", .n = 3, .target = "10"}, out, err) == cli::kUsage);
    CHECK(cli::cmd_bench(cfg, {.family = "nope", .n = 3}, out, err) == cli::kUsage);
    fs::remove_all(dir);
}

TEST_CASE("transform writes one variant per eligible gate") {
    const fs::path dir = scratch("transform");
    spit(dir / "in.qasm", "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nrz(0.5) q[0];\nsx q[0];\ncx q[0],q[1];\nx q[1];\n"
                          "measure q -> c;\n");
    auto cfg = config_for(dir / "in.qasm", dir / "out");
    cfg.reversals = 2;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_transform(cfg, {}, out, err) == cli::kOk);
    for (int g : {1, 2, 3}) {
        const auto text = slurp(dir / "out" / ("variant_" + std::to_string(g) + ".qasm"));
        auto r = parse_qasm(text);
        REQUIRE(r.ok());
        CHECK(r.circuit->ops.size() == 6 + 2 * 2 + 2);
    }
    CHECK_FALSE(fs::exists(dir / "out" / "variant_0.qasm"));

    CHECK(cli::cmd_transform(cfg, {.gates = {2}}, out, err) == cli::kOk);
    CHECK(cli::cmd_transform(cfg, {.gates = {0}}, out, err) == cli::kUsage);
    CHECK(cli::cmd_transform(cfg, {.group = {1, 2}}, out, err) == cli::kOk);
    CHECK(fs::exists(dir / "out" / "group_1_2.qasm"));

    // op 2 (cx on q0,q1) sits between sx q[0] and x q[1]
    CHECK(cli::cmd_transform(cfg, {.group = {1, 3}}, out, err) == cli::kUsage);
    CHECK(err.str().find("op 2") != std::string::npos);

    cfg.input = (dir / "missing.qasm").string();
    CHECK(cli::cmd_transform(cfg, {}, out, err) == cli::kUsage);
    fs::remove_all(dir);
}

TEST_CASE("analyze output files and determinism") {
    const fs::path dir = scratch("analyze");
    std::ostringstream out, err;
    cli::RunConfig bench;
    bench.out_dir = dir.string();
    REQUIRE(cli::cmd_bench(bench, {.family = "ghz", .n = 3}, out, err) == cli::kOk);

    auto cfg = config_for(dir / "ghz_3.qasm", dir / "a");
    REQUIRE(cli::cmd_analyze(cfg, out, err) == cli::kOk);
    cfg.out_dir = (dir / "b").string();
    REQUIRE(cli::cmd_analyze(cfg, out, err) == cli::kOk);

    auto a = json::parse(slurp(dir / "a" / "report.json"));
    auto b = json::parse(slurp(dir / "b" / "report.json"));
    for (auto* doc : {&a, &b}) {
        doc->erase("generated_at");
        (*doc)["config"].erase("out_dir");
    }
    CHECK(a == b);
    CHECK(slurp(dir / "a" / "report.csv") == slurp(dir / "b" / "report.csv"));
    CHECK(a["report"]["records"].size() == 3);
    CHECK(a["skipped"].size() == 5);
    CHECK(a["report"]["records"][0].contains("tvd_ideal"));
    CHECK(a["noise_model"]["p1"] == 0.001);
    for (int q = 0; q < 3; ++q) CHECK(fs::exists(dir / "a" / "tracks" / ("qubit_" + std::to_string(q) + ".csv")));

    spit(dir / "bad.qasm", "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n");
    cfg.input = (dir / "bad.qasm").string();
    std::ostringstream err2;
    CHECK(cli::cmd_analyze(cfg, out, err2) == cli::kUsage);
    CHECK(err2.str().find(":3:1") != std::string::npos);

    cfg.input = (dir / "ghz_3.qasm").string();
    cfg.noise = (dir / "noise.json").string();
    spit(dir / "noise.json", R"({"p1": 2.0})");
    CHECK(cli::cmd_analyze(cfg, out, err) == cli::kUsage);
    spit(dir / "noise.json", R"({"p1": 0.0, "readout_flip": [0.1, 0.2, 0.3]})");
    CHECK(cli::cmd_analyze(cfg, out, err) == cli::kOk);
    fs::remove_all(dir);
}

TEST_CASE("mitigate") {
    const fs::path dir = scratch("mitigate");
    std::ostringstream out, err;
    cli::RunConfig bench;
    bench.out_dir = dir.string();
    REQUIRE(cli::cmd_bench(bench, {.family = "crosstalk"}, out, err) == cli::kOk);
    auto cfg = config_for(dir / "crosstalk_3.qasm", dir);
    REQUIRE(cli::cmd_mitigate(cfg, {.k = 1, .seed_batch = 3}, out, err) == cli::kOk);
    const auto j = json::parse(slurp(dir / "mitigation.json"));
    CHECK(j["per_seed"].size() == 3);
    CHECK(j["per_seed"][2]["seed"] == 9);
    CHECK(j["plan"]["inserted_barriers"] == 2);
    CHECK(parse_qasm(slurp(dir / "mitigated.qasm")).ok());

    CHECK(cli::cmd_mitigate(cfg, {.k = 0}, out, err) == cli::kUsage);
    CHECK(cli::cmd_mitigate(cfg, {.seed_batch = 0}, out, err) == cli::kUsage);
    fs::remove_all(dir);
}

TEST_CASE("the binary maps failures to exit codes") {
    const fs::path dir = scratch("binary");
    const std::string d = dir.string();
    CHECK(run_binary("bench qft 3 --target 011 --out " + d) == 0);
    CHECK(run_binary("bench qft 3 --target 01 --out " + d) == 2);
    CHECK(run_binary("simulate " + d + "/qft_3.qasm --exact") == 0);
    CHECK(run_binary("analyze " + d + "/qft_3.qasm --shots 500 --out " + d) == 0);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(run_binary("transform " + d + "/qft_3.qasm --group 1,3 --out " + d) == 2);
    CHECK(run_binary("mitigate " + d + "/qft_3.qasm --k 0 --out " + d) == 2);
    CHECK(run_binary("mitigate " + d + "/qft_3.qasm --k 1 --seed-batch 2 --shots 500 --report " + d +
                     "/report.json --out " + d) == 0);
    CHECK(run_binary("analyze " + d + "/nowhere.qasm") == 2);
    CHECK(run_binary("analyze " + d + "/qft_3.qasm --shots nope") == 2);
    CHECK(run_binary("frobnicate") == 2);
    CHECK(run_binary("") == 2);
    CHECK(run_binary("--help") == 0);
    fs::remove_all(dir);
}
