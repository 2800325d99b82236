#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qp/cli.hpp"

using namespace qp;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve subcommand emits schema-versioned JSON") {
    auto r = run({"solve", "--poly", "1,0,1", "--prime", "5", "--exp", "2", "--json", "--brute"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["request"]["subcommand"] == "solve");
    CHECK(doc["request"]["poly"] == json::array({1, 0, 1}));
    CHECK(doc["result"]["modulus"] == "25");
    CHECK(doc["result"]["residues"] == json::array({7, 18}));
    CHECK(doc["checks"]["brute_force_matches"] == true);
}

TEST_CASE("mindist subcommand") {
    auto r = run({"mindist", "--poly", "1,0,1", "--prime", "5", "--emax", "3", "--json",
                  "--brute"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    auto& rows = doc["result"]["distances"];
    REQUIRE(rows.size() == 4);
    CHECK(rows[0]["d"] == "1");  // e = 0
    CHECK(rows[1]["d"] == "1");
    CHECK(doc["checks"]["brute_force_matches"] == true);

    auto empty = run({"mindist", "--poly", "1,0,1", "--prime", "3", "--emax", "2", "--json"});
    REQUIRE(empty.code == 0);
    json doc2 = json::parse(empty.out);
    CHECK(doc2["result"]["distances"][1]["d"] == "inf");
}

TEST_CASE("period subcommand: big integers travel as decimal strings") {
    auto r = run({"period", "--poly", "1,0,1", "--k", "1", "--json"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["P"] == "5");
    CHECK(doc["result"]["B_k"] == "5");
    CHECK(doc["result"]["A_k"] == "5");
    CHECK(doc["result"]["exceptional_prime"].is_null());
    CHECK(doc["result"]["local_periods"]["5"] == "5");
    CHECK(doc["checks"]["local_global_product_matches"] == true);
}

TEST_CASE("exit codes: 0 ok, 1 domain error, 2 usage error") {
    CHECK(run({"period", "--poly", "1,0,1", "--k", "2"}).code == 0);

    auto dom = run({"period", "--poly", "1,1,0", "--k", "1"});
    CHECK(dom.code == 1);
    CHECK(dom.err.find("domain error") != std::string::npos);
    CHECK(dom.err.find("1") != std::string::npos);  // witness i0 = 1

    CHECK(run({}).code == 2);
    CHECK(run({"period", "--poly", "1,0,1"}).code == 2);        // missing --k
    CHECK(run({"period", "--poly", "1,0", "--k", "1"}).code == 2);  // malformed poly
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("oracle subcommand with --verify") {
    auto r = run({"oracle", "--poly", "1,0,1", "--k", "2", "--json", "--verify"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["empirical_period"] == "10");
    CHECK(doc["checks"]["matches_closed_form"] == true);
    CHECK(doc["checks"]["hua_identity"] == true);

    // --verify only adds a check; the result payload is unchanged.
    auto plain = run({"oracle", "--poly", "1,0,1", "--k", "2", "--json"});
    json doc2 = json::parse(plain.out);
    CHECK(doc2["result"] == doc["result"]);
    CHECK_FALSE(doc2["checks"].contains("matches_closed_form"));
}

TEST_CASE("oracle cap is enforced") {
    auto r = run({"oracle", "--poly", "1,0,1", "--k", "2", "--oracle-cap", "10"});
    CHECK(r.code == 1);
    CHECK(r.err.find("domain error") != std::string::npos);
}

TEST_CASE("asym subcommand CSV output") {
    auto r = run({"asym", "--poly", "1,0,1", "--k", "1", "--points", "1000,10000", "--csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("n,log_lcm,ratio,predicted_C\n", 0) == 0);
    // One header plus one row per point.
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);

    auto j = run({"asym", "--poly", "1,0,1", "--k", "1", "--points", "1000,10000", "--json"});
    json doc = json::parse(j.out);
    CHECK(doc["result"]["predicted_C"] == 4.0);
    CHECK(doc["result"]["samples"].size() == 2);
}

TEST_CASE("selftest passes") {
    auto r = run({"selftest", "--json"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["passed"] == true);
    CHECK(doc["result"]["solver_checks"].get<long>() > 1000);
}

TEST_CASE("text mode is the default") {
    auto r = run({"period", "--poly", "1,0,1", "--k", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("smallest period P = 5") != std::string::npos);
    CHECK(r.out.find("schema_version") == std::string::npos);
}
