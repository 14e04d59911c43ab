// End-to-end drive of the command-line binary (path supplied via the
// TRINOGEN_BIN environment variable by the test harness).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;  // stdout only
};

const char* binary() {
    const char* bin = std::getenv("TRINOGEN_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "TRINOGEN_BIN must point at the built binary");
    return bin;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + std::string(binary()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<json> records(const std::string& out) {
    std::vector<json> recs;
    size_t pos = 0;
    while (pos < out.size()) {
        size_t nl = out.find('\n', pos);
        if (nl == std::string::npos) nl = out.size();
        std::string line = out.substr(pos, nl - pos);
        pos = nl + 1;
        if (!line.empty()) recs.push_back(json::parse(line));
    }
    return recs;
}

std::string strip_timing(const std::string& out) {
    std::string res;
    for (auto& rec : records(out)) {
        rec.erase("timing_ms");
        res += rec.dump() + "\n";
    }
    return res;
}

void flatten_keys(const std::string& prefix, const json& j, std::vector<std::string>& out) {
    if (j.is_object()) {
        for (const auto& [key, val] : j.items())
            flatten_keys(prefix.empty() ? key : prefix + "." + key, val, out);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& val : j) flatten_keys(prefix + "." + std::to_string(i++), val, out);
        if (j.empty()) out.push_back(prefix);
    } else {
        out.push_back(prefix);
    }
}

}  // namespace

TEST_CASE("record envelope is stable") {
    auto r = run("period --k 1 --m 3");
    REQUIRE(r.exit_code == 0);
    auto recs = records(r.out);
    REQUIRE(recs.size() == 1);
    const json& rec = recs[0];
    CHECK(rec["schema_version"] == "1");
    CHECK(rec["command"] == "period");
    CHECK(rec["inputs"]["k"] == "1");
    CHECK(rec["inputs"]["m"] == "3");
    CHECK(rec["result"]["pi"] == "8");
    CHECK(rec["timing_ms"].is_number());
    CHECK(rec["timing_ms"].get<double>() >= 0.0);
}

TEST_CASE("period examples") {
    CHECK(records(run("period --k 1 --m 2").out)[0]["result"]["pi"] == "3");
    CHECK(records(run("period --k 4 --m 2").out)[0]["result"]["pi"] == "2");
}

TEST_CASE("wss check reports the full verdict") {
    auto r = run("wss check --k 2 --p 13");
    REQUIRE(r.exit_code == 0);
    auto rec = records(r.out)[0];
    CHECK(rec["command"] == "wss check");
    CHECK(rec["result"]["is_wss"] == true);
    CHECK(rec["result"]["u_residue"] == "0");
    CHECK(rec["result"]["delta"] == "-1");
    CHECK(rec["result"]["pi_p"] == "28");

    auto miss = records(run("wss check --k 1 --p 13").out)[0];
    CHECK(miss["result"]["is_wss"] == false);
}

TEST_CASE("wss sieve emits one sorted record per hit") {
    auto r = run("wss sieve --k 2 --pmax 100 --quiet");
    REQUIRE(r.exit_code == 0);
    auto recs = records(r.out);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0]["result"]["p"] == "13");
    CHECK(recs[1]["result"]["p"] == "31");
    for (const auto& rec : recs) CHECK(rec["result"]["is_wss"] == true);

    auto none = run("wss sieve --k 1 --pmax 1000 --quiet");
    CHECK(none.exit_code == 0);
    CHECK(none.out.empty());
}

TEST_CASE("sieve output is independent of the job count") {
    auto one = run("wss sieve --k 2 --pmax 20000 --jobs 1 --quiet");
    auto eight = run("wss sieve --k 2 --pmax 20000 --jobs 8 --quiet");
    REQUIRE(one.exit_code == 0);
    REQUIRE(eight.exit_code == 0);
    CHECK(strip_timing(one.out) == strip_timing(eight.out));
    CHECK_FALSE(records(one.out).empty());
}

TEST_CASE("field reports invariants and rejects k = 4") {
    auto r = records(run("field --k 6").out)[0];
    CHECK(r["result"]["D"] == "10");
    CHECK(r["result"]["fund_disc"] == "40");
    CHECK(r["result"]["squarefree"] == true);
    CHECK(r["result"]["class_number"] == "2");

    auto bad = run("field --k 4");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.empty());

    // non-squarefree discriminant: class number is absent, not invented
    auto ns = records(run("field --k 11").out)[0];
    CHECK(ns["result"]["squarefree"] == false);
    CHECK(ns["result"]["class_number"].is_null());
}

TEST_CASE("mono raw and family modes") {
    auto golden = records(run("mono --N 2 --M 1 --A=-1 --B=-1").out)[0];
    CHECK(golden["result"]["is_monogenic"] == true);
    CHECK(golden["result"]["irreducibility_basis"] == "quadratic_criterion");
    CHECK(golden["result"]["discriminant"] == "5");

    auto fam = records(run("mono --family --k 2 --s 13 --n 1").out)[0];
    CHECK(fam["result"]["is_monogenic"] == false);
    CHECK(fam["result"]["irreducibility_basis"] == "family_lemma");
    CHECK(fam["result"]["N"] == "26");
    bool saw13 = false;
    for (const auto& v : fam["result"]["verdicts"])
        if (v["p"] == "13") {
            saw13 = true;
            CHECK(v["divides_index"] == true);
            CHECK(v["rule"] == "jks4");
        }
    CHECK(saw13);

    auto tower = records(run("mono --family --k 1 --s 2 --n 3").out)[0];
    CHECK(tower["result"]["is_monogenic"] == true);

    // flag validation: both modes, neither mode, incomplete raw mode
    CHECK(run("mono --family --k 1 --s 2 --n 1 --N 2 --M 1 --A=-1 --B=-1").exit_code == 2);
    CHECK(run("mono").exit_code == 2);
    CHECK(run("mono --N 2 --M 1 --A=-1").exit_code == 2);
    CHECK(run("mono --family --k 1 --s 2").exit_code == 2);
    // the family lemma is inapplicable for k = 11 (125 is not squarefree)
    CHECK(run("mono --family --k 11 --s 2 --n 1").exit_code == 2);
    // reducibility needs no attestation and is reported as a refutation
    auto red = records(run("mono --N 2 --M 1 --A 2 --B 1").out)[0];
    CHECK(red["result"]["irreducible"] == false);
    CHECK(red["result"]["is_monogenic"] == false);
}

TEST_CASE("mono handles arbitrary-precision coefficients and incompleteness") {
    // B = 2^128 exceeds the factorization cap: the report stays honest
    auto r = run(
        "mono --N 3 --M 2 --A 1 --B 340282366920938463463374607431768211456 "
        "--assume-irreducible");
    REQUIRE(r.exit_code == 0);
    auto rec = records(r.out)[0];
    CHECK(rec["result"]["complete"] == false);
    CHECK(rec["result"]["is_monogenic"].is_null());
    CHECK(rec["result"]["untested_cofactors"].size() == 2);
    CHECK(rec["result"]["irreducibility_basis"] == "attested");

    CHECK(run("mono --N 3 --M 2 --A 1 --B not-a-number").exit_code == 2);
}

TEST_CASE("verify emits the theorem report with the reserved exit code semantics") {
    auto r = run("verify --k 2 --s 13 --depth 1");
    REQUIRE(r.exit_code == 0);  // consistent: exit 0, not 3
    auto rec = records(r.out)[0];
    CHECK(rec["result"]["hypotheses_ok"] == true);
    CHECK(rec["result"]["consistent_with_theorem"] == true);
    REQUIRE(rec["result"]["wss_divisors"].size() == 1);
    CHECK(rec["result"]["wss_divisors"][0] == "13");
    REQUIRE(rec["result"]["family"].size() == 1);
    CHECK(rec["result"]["family"][0]["is_monogenic"] == false);

    // failed hypotheses: report is emitted, consistency is unevaluated, exit 0
    auto gate = run("verify --k 4 --s 3");
    CHECK(gate.exit_code == 0);
    auto grec = records(gate.out)[0];
    CHECK(grec["result"]["k_mod_4_ok"] == false);
    CHECK(grec["result"]["hypotheses_ok"] == false);
    CHECK(grec["result"]["consistent_with_theorem"].is_null());
    CHECK(grec["result"]["family"].empty());

    auto deep = run("verify --k 1 --s 3 --depth 2");
    CHECK(deep.exit_code == 0);
    auto drec = records(deep.out)[0];
    CHECK(drec["result"]["consistent_with_theorem"] == true);
    REQUIRE(drec["result"]["family"].size() == 2);
    for (const auto& f : drec["result"]["family"]) CHECK(f["is_monogenic"] == true);
}

TEST_CASE("csv and json formats carry identical fields") {
    auto j = run("mono --family --k 2 --s 13 --n 1");
    auto c = run("mono --family --k 2 --s 13 --n 1 --format csv");
    REQUIRE(j.exit_code == 0);
    REQUIRE(c.exit_code == 0);
    std::vector<std::string> json_keys;
    flatten_keys("", records(j.out)[0], json_keys);

    // header = first line of CSV output; parse respecting quotes
    std::string header = c.out.substr(0, c.out.find('\n'));
    std::vector<std::string> csv_keys;
    std::string cur;
    bool quoted = false;
    for (char ch : header) {
        if (ch == '"') quoted = !quoted;
        else if (ch == ',' && !quoted) { csv_keys.push_back(cur); cur.clear(); }
        else cur += ch;
    }
    csv_keys.push_back(cur);
    // parsed JSON objects iterate alphabetically, so compare as key sets
    std::sort(json_keys.begin(), json_keys.end());
    std::sort(csv_keys.begin(), csv_keys.end());
    CHECK(json_keys == csv_keys);

    // csv emits exactly one header and one row here
    auto csv_recs = 0;
    for (char ch : c.out) csv_recs += ch == '\n';
    CHECK(csv_recs == 2);
}

TEST_CASE("degree cap honors the environment override") {
    // 2 * 2^3 = 16 exceeds a cap of 8
    CHECK(run("mono --family --k 1 --s 2 --n 3", "TRINOGEN_DEGREE_CAP=8 ").exit_code == 2);
    CHECK(run("mono --family --k 1 --s 2 --n 3", "TRINOGEN_DEGREE_CAP=16 ").exit_code == 0);
    CHECK(run("verify --k 1 --s 2 --depth 3", "TRINOGEN_DEGREE_CAP=8 ").exit_code == 2);
    CHECK(run("period --k 1 --m 3", "TRINOGEN_DEGREE_CAP=junk ").exit_code == 2);
}

TEST_CASE("flag errors exit 2 and help exits 0") {
    CHECK(run("period --k 1").exit_code == 2);           // missing --m
    CHECK(run("nonsense").exit_code == 2);               // unknown subcommand
    CHECK(run("").exit_code == 2);                       // subcommand required
    CHECK(run("period --k 1 --m 0").exit_code == 2);     // modulus must be >= 2
    CHECK(run("wss check --k 2 --p 12").exit_code == 2); // p must be prime
    CHECK(run("--help").exit_code == 0);
    CHECK(run("mono --help").exit_code == 0);
}
