#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(KNORMAL_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json parse(const RunResult& r) { return json::parse(r.out); }

} // namespace

TEST_CASE("check-pair settles by sieve alone when the inequality succeeds") {
    RunResult r = run_cli("check-pair --q 337 --n 3 --k 0");
    CHECK(r.exit_code == 0);
    json j = parse(r);
    CHECK(j["exists"] == true);
    CHECK(j["mode"] == "Normal0");
    CHECK(j["sieve"]["outcome"] == "Success");
    CHECK(!j.contains("search"));
}

TEST_CASE("check-pair falls through to search and finds the witness") {
    RunResult r = run_cli("check-pair --q 5 --n 5 --k 1");
    CHECK(r.exit_code == 0);
    json j = parse(r);
    CHECK(j["mode"] == "OneNormal");
    CHECK(j["sieve"]["outcome"] != "Success");
    CHECK(j["search"]["status"] == "WitnessFound");
    CHECK(j["search"]["witness"]["exponent"] == 2);
    CHECK(j["search"]["witness"]["order_ok"] == true);
    CHECK(j["search"]["witness"]["fqorder_ok"] == true);
    CHECK(j["search"]["witness"]["gcd_ok"] == true);
    CHECK(j["search"]["witness"]["field"]["base_modulus"].is_null());
}

TEST_CASE("check-pair reports non-existence after exhaustion") {
    RunResult r = run_cli("check-pair --q 3 --n 4 --k 0");
    CHECK(r.exit_code == 1);
    json j = parse(r);
    CHECK(j["exists"] == false);
    CHECK(j["sieve"]["outcome"] == "FailNoMorePrimes");
    CHECK(j["sieve"]["s"] == 2);
    CHECK(j["search"]["status"] == "ExhaustedNoWitness");
    CHECK(j["search"]["scanned_limit"] == 79);
}

TEST_CASE("check-pair with k >= 2 skips the sieve") {
    RunResult r = run_cli("check-pair --q 5 --n 4 --k 2");
    json j = parse(r);
    CHECK(j["mode"].is_null());
    CHECK(j["sieve"].is_null());
    CHECK(j["search"].contains("status"));
}

TEST_CASE("cubic mode is the default for k = 1, n = 3, p >= 5") {
    RunResult r = run_cli("check-pair --q 7 --n 3 --k 1");
    json j = parse(r);
    CHECK(j["mode"] == "CubicOneNormal");
}

TEST_CASE("repeated runs emit byte-identical output") {
    RunResult a = run_cli("check-pair --q 5 --n 4 --k 1");
    RunResult b = run_cli("check-pair --q 5 --n 4 --k 1");
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("sieve csv projection has the documented columns") {
    RunResult r = run_cli("sieve --q 5 --n 15 --mode OneNormal --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("q,n,mode,outcome,s,delta_num,delta_den,lhs,rhs\n", 0) == 0);
    CHECK(r.out.find("5,15,OneNormal,Success,5,") != std::string::npos);
}

TEST_CASE("sieve json carries exact rational bookkeeping") {
    RunResult r = run_cli("sieve --q 3 --n 4");
    CHECK(r.exit_code == 1);
    json j = parse(r);
    CHECK(j["report"]["outcome"] == "FailNoMorePrimes");
    CHECK(j["report"]["delta"]["num"] == "3");
    CHECK(j["report"]["delta"]["den"] == "10");
    CHECK(j["report"]["sieving_primes"][0] == "5");
    CHECK(j["report"]["sieving_primes"][1] == "2");
}

TEST_CASE("search exit codes distinguish exhausted from capped") {
    CHECK(run_cli("search --q 3 --n 4 --k 0").exit_code == 1);
    CHECK(run_cli("search --q 5 --n 4 --k 1 --max-exhaustive 10").exit_code == 2);
    CHECK(run_cli("search --q 5 --n 4 --k 1").exit_code == 0);
}

TEST_CASE("trace coverage outcomes and uncovered values") {
    RunResult ok = run_cli("trace-coverage --q 5 --n 3");
    CHECK(ok.exit_code == 0);
    json jok = parse(ok);
    CHECK(jok["success"] == true);
    CHECK(jok["last_exponent"] == 42);

    RunResult bad = run_cli("trace-coverage --q 3 --n 2");
    CHECK(bad.exit_code == 1);
    json jbad = parse(bad);
    CHECK(jbad["success"] == false);
    CHECK(jbad["uncovered"] == json::array({1, 2}));
}

TEST_CASE("reproduce subcommand passes on the bundled fixtures") {
    RunResult s0 = run_cli("reproduce --table S0");
    CHECK(s0.exit_code == 0);
    json j = parse(s0);
    CHECK(j["pass"] == true);
    CHECK(j["checked"] == 22);
    CHECK(j["mismatched"] == 0);

    CHECK(run_cli("reproduce --table N2").exit_code == 0);
    CHECK(run_cli("reproduce --table Table1").exit_code == 0);
}

TEST_CASE("missing fixture directory exits with the fixture code") {
    CHECK(run_cli("reproduce --table S0 --fixtures /nonexistent-dir").exit_code == 66);
}

TEST_CASE("usage errors exit with the usage code") {
    CHECK(run_cli("no-such-command").exit_code == 64);
    CHECK(run_cli("check-pair --q 5").exit_code == 64);       // missing required options
    CHECK(run_cli("sieve --q 6 --n 3").exit_code == 64);      // 6 is not a prime power
    CHECK(run_cli("sieve --q 4 --n 3").exit_code == 64);      // even characteristic
    CHECK(run_cli("sieve --q 5 --n 3 --format yaml").exit_code == 64);
}

TEST_CASE("sweep emits one entry per grid point and skips non prime powers") {
    RunResult r = run_cli("sweep --q-range 3:10 --n-range 4:5 --mode Normal0");
    CHECK(r.exit_code == 0);
    json j = parse(r);
    CHECK(j["entries"].is_array());
    bool saw_q9 = false;
    for (const auto& e : j["entries"]) {
        CHECK(e["q"] != 6);
        if (e["q"] == 9) saw_q9 = true;
    }
    CHECK(saw_q9);
}

TEST_CASE("identity suite passes on a small field") {
    RunResult r = run_cli("verify-identities --q 3 --n 2");
    CHECK(r.exit_code == 0);
    json j = parse(r);
    CHECK(j["all_pass"] == true);
}
