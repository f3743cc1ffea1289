#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef KQ_CLI_PATH
#define KQ_CLI_PATH "kq"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(KQ_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WEXITSTATUS(status);
    return r;
}

std::string strip_timestamp(std::string text) {
    nlohmann::json j = nlohmann::json::parse(text);
    j.erase("timestamp");
    return j.dump();
}

} // namespace

TEST_CASE("mckay show emits adjacency and delta") {
    RunResult r = run_cli("mckay show --group D4 --format json");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["family"] == "D4");
    CHECK(j["order"] == 8);
    CHECK(j["dims"] == std::vector<int>{1, 1, 2, 1, 1});
    CHECK(j["adjacency"][2][0] == 1);
    CHECK(j["delta"]["weights"] == std::vector<int>{1, 1, 2, 1, 1});
}

TEST_CASE("mckay dot views") {
    RunResult framed = run_cli("mckay dot --group A1 --view framed");
    CHECK(framed.code == 0);
    CHECK(framed.out.find("inf -> v0") != std::string::npos);
    RunResult unframed = run_cli("mckay dot --group A1 --view unframed");
    CHECK(unframed.out.find("inf") == std::string::npos);
}

TEST_CASE("stability vprime matches the worked example") {
    RunResult r = run_cli("stability vprime --group A2 --I 1 --nI 2");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["v_prime"]["weights"] == std::vector<int>{3, 2, 3});
    CHECK(j["N"] == 3);
}

TEST_CASE("stability theta-i and cartan-check") {
    RunResult t = run_cli("stability theta-i --group A2 --I 1,2 --v 3,2,1");
    CHECK(t.code == 0);
    nlohmann::json jt = nlohmann::json::parse(t.out);
    CHECK(jt["inf"] == nlohmann::json::array({-3, 1}));

    RunResult c = run_cli("stability cartan-check --group A2 --K 0,2");
    CHECK(c.code == 0);
    nlohmann::json jc = nlohmann::json::parse(c.out);
    REQUIRE(jc["blocks"].size() == 1);
    CHECK(jc["blocks"][0]["inverse_nonnegative"] == true);

    // full vertex set: caller bug, invariant violation exit code
    RunResult bad = run_cli("stability cartan-check --group A2 --K 0,1,2");
    CHECK(bad.code == 2);
}

TEST_CASE("oracle count and certify round trip") {
    RunResult r = run_cli("oracle count --m 3 --v 1,1,1");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["count"] == 3);

    RunResult cert = run_cli("oracle certify --m 2 --partition 2,1");
    CHECK(cert.code == 0);
    nlohmann::json j = nlohmann::json::parse(cert.out);
    CHECK(j["group"] == "A1");
    CHECK(j["dims"]["inf"] == 1);

    // the emitted representation passes rep check (JSON round trip)
    std::ofstream("/tmp/kq_cli_rep.json") << cert.out;
    RunResult chk = run_cli("rep check --in /tmp/kq_cli_rep.json");
    CHECK(chk.code == 0);
    CHECK(nlohmann::json::parse(chk.out)["moment_residual_zero"] == true);

    RunResult stab = run_cli("rep stability --in /tmp/kq_cli_rep.json --cplus");
    CHECK(stab.code == 0);
    CHECK(nlohmann::json::parse(stab.out)["verdict"] == "stable");
}

TEST_CASE("algebra basis table") {
    RunResult r = run_cli("algebra basis --kind A_I --group A1 --I 0 --cap 4");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["dim_per_degree"].size() == 5);
    RunResult csv = run_cli("algebra basis --kind B --group A1 --cap 2 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.find("degree,dim") != std::string::npos);
}

TEST_CASE("pipeline run is deterministic up to the timestamp") {
    std::string args = "pipeline run --group A1 --I 0 --nI 1 --restarts 12 --seed 9";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
}

TEST_CASE("config file supplies defaults, flags override") {
    std::ofstream("/tmp/kq_cli.toml") << "seed=5\nthreads=1\n";
    RunResult with_cfg =
        run_cli("pipeline run --group A1 --I 0 --nI 1 --restarts 8 --config /tmp/kq_cli.toml");
    REQUIRE(with_cfg.code == 0);
    nlohmann::json j = nlohmann::json::parse(with_cfg.out);
    CHECK(j["input"]["seed"] == 5);
    RunResult override_cfg = run_cli(
        "pipeline run --group A1 --I 0 --nI 1 --restarts 8 --config /tmp/kq_cli.toml --seed 6");
    nlohmann::json j2 = nlohmann::json::parse(override_cfg.out);
    CHECK(j2["input"]["seed"] == 6);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("stability vprime --group A2 --I 1").code == 1); // missing --nI
    CHECK(run_cli("mckay show").code == 1);                        // missing --group
    CHECK(run_cli("nonsense").code == 1);
}

TEST_CASE("resource guards exit with code 3") {
    CHECK(run_cli("algebra basis --kind Pi --group E8 --cap 16").code == 3);
}
