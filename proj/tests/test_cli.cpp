#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(QCNT_CLI_PATH) + " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("modelset csv matches the worked example") {
    // CSV is the modelset default format
    auto r = run_cli("modelset --d 5 --x 0 --closed --range 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "a,b,value,conj_value\n"
                   "1,0,1,1\n"
                   "0,1,1.6180339887498949,-0.6180339887498949\n"
                   "1,1,2.6180339887498949,0.3819660112501051\n"
                   "1,2,4.2360679774997898,-0.23606797749978981\n");
}

TEST_CASE("identical invocations are byte-identical") {
    std::string cmd = "zeta --d 5 --x 0 --closed --s 2.5 --method continued --cutoff 3000";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    auto c1 = run_cli("curve --d 5 --x 0 --closed --range 400 --x-max 10 --samples 300");
    auto c2 = run_cli("curve --d 5 --x 0 --closed --range 400 --x-max 10 --samples 300");
    CHECK(c1.out == c2.out);
    CHECK(c1.out.find("<svg") != std::string::npos);
    CHECK(c1.out.find("polyline") != std::string::npos);
}

TEST_CASE("zeta json schema and dispatch") {
    auto r = run_cli("zeta --d 5 --x 0 --closed --s 4 --method direct --cutoff 3000");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["schema"] == "qcnt/1");
    CHECK(j["rigorous"] == true);
    CHECK(j["method"] == "direct");
    CHECK(j["value_im"] == 0.0);
    CHECK(j["value_re"].get<double>() > 1.0);
    CHECK(j["error_bound"].get<double>() < 1e-8);
    CHECK(j["config"]["d"] == 5);
}

TEST_CASE("lattice oracles through the cli") {
    auto r = run_cli("theta-check --lattice --t 1");
    json j = json::parse(r.out);
    CHECK(j["rel_err"].get<double>() < 1e-12);
    CHECK(j["constant_used"] == 1.0);

    auto jj = run_cli("j --lattice --cutoff 20000");
    json inv = json::parse(jj.out);
    CHECK(std::abs(inv["J"].get<double>() - 40.0 / 49.0) < 1e-7);
    CHECK(inv["j_infinite"] == true);

    auto lam = run_cli("lambda --lattice --s 4");
    json l = json::parse(lam.out);
    CHECK(std::abs(l["value"]["re"].get<double>() - 0.10966227112321510) < 1e-9);
    CHECK(l["residual_functional_eq"].get<double>() < 1e-6);

    auto tr = run_cli("trig --lattice --range 3000 --zeros 8 --pi-terms 1000 --eval 0.5");
    json t = json::parse(tr.out);
    CHECK(t["betas"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(t["evaluations"][0]["s"].get<double>() ==
          doctest::Approx(0.3183098861837907).epsilon(1e-6));
}

TEST_CASE("field and pink reports") {
    auto f = run_cli("field --d 7");
    json j = json::parse(f.out);
    CHECK(j["zt_equals_ok"] == false);
    CHECK(j["disc"] == 28);

    auto p = run_cli("pink --d 5 --x 0 --m-min 3 --m-max 5 --range 30 --n-max 20000");
    json pr = json::parse(p.out);
    CHECK(pr["set"]["m"].size() == 3);
    for (const auto& ratio : pr["set"]["decay_ratios"]) {
        CHECK(ratio.get<double>() > 0.2);
        CHECK(ratio.get<double>() < 0.6);
    }
    CHECK(pr["value"]["J_target"].get<double>() > 0);

    auto q = run_cli("jqt --d 5 --x 0 --m-max 6 --n-max 20000");
    json qq = json::parse(q.out);
    CHECK(qq["steps"].size() >= 4);
}

TEST_CASE("error paths and exit codes") {
    auto bad_d = run_cli("field --d 12", true);
    CHECK(bad_d.exit_code == 2);
    CHECK(bad_d.out.find("invalid-input") != std::string::npos);

    auto bad_domain = run_cli("zeta --d 5 --x 0 --s 0.5 --method direct --cutoff 100", true);
    CHECK(bad_domain.exit_code == 2);

    auto too_big = run_cli("modelset --d 5 --x -30 --range 1000000", true);
    CHECK(too_big.exit_code == 3);
    CHECK(too_big.out.find("resource") != std::string::npos);

    auto usage = run_cli("no-such-command", true);
    CHECK(usage.exit_code != 0);
}
