#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

// End-to-end checks of the command-line tool's JSON surface. QSERIES_CLI_BIN
// is injected by the build.

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(QSERIES_CLI_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

nlohmann::json load(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json doc;
    in >> doc;
    return doc;
}

void check_record_schema(const nlohmann::json& rec) {
    CHECK(rec.contains("command"));
    CHECK(rec.contains("params"));
    CHECK(rec.contains("nq"));
    CHECK(rec.contains("nt"));
    CHECK(rec.contains("outcome"));
    CHECK(rec.contains("millis"));
}

} // namespace

TEST_CASE("verify emits schema-conforming records and exit codes") {
    CHECK(run("verify --suite kluyver --order 20 --json cli_v.json") == 0);
    nlohmann::json doc = load("cli_v.json");
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 3); // three default bindings
    for (const auto& rec : doc) {
        check_record_schema(rec);
        CHECK(rec["command"] == "verify");
        CHECK(rec["id"] == "kluyver");
        CHECK(rec["nq"] == 20);
        CHECK(rec["outcome"] == "pass");
    }

    CHECK(run("verify --suite no-such-id") == 2);
    CHECK(run("verify --suite kluyver --params zz=1") == 2);
    CHECK(run("bogus-subcommand") == 2);
    // expected-divergence entries never gate the exit status
    CHECK(run("verify --suite dilcher-original-discrepancy --order 20") == 0);
}

TEST_CASE("simulate and partitions emit schema-conforming records") {
    CHECK(run("simulate dag --n 12 --p 0.5 --trials 200000 --seed 14 "
              "--json cli_d.json") == 0);
    nlohmann::json dag = load("cli_d.json");
    REQUIRE(dag.is_array());
    check_record_schema(dag[0]);
    CHECK(dag[0]["command"] == "simulate");
    CHECK(dag[0]["histogram"].is_array());

    CHECK(run("simulate heap --q 0.4 --trials 50000 --seed 1 "
              "--json cli_h.json") == 0);
    nlohmann::json heap = load("cli_h.json");
    check_record_schema(heap[0]);
    CHECK(heap[0]["id"] == "heap");

    CHECK(run("partitions --max-n 20 --max-m 3 --c 1/2 --json cli_p.json") == 0);
    nlohmann::json part = load("cli_p.json");
    check_record_schema(part[0]);
    CHECK(part[0]["command"] == "partitions");
    CHECK(part[0]["outcome"] == "pass");
}

TEST_CASE("report merges arrays and fails cleanly on bad input") {
    CHECK(run("verify --suite chu-vandermonde --json cli_a.json") == 0);
    CHECK(run("verify --suite u-tails --order 15 --json cli_b.json") == 0);
    CHECK(run("report cli_a.json cli_b.json --json cli_m.json") == 0);
    nlohmann::json merged = load("cli_m.json");
    CHECK(merged.size() == load("cli_a.json").size() + load("cli_b.json").size());
    for (const auto& rec : merged) check_record_schema(rec);

    CHECK(run("report /nonexistent/path.json --json out.json") == 3);
}

TEST_CASE("suite files drive verification") {
    {
        std::ofstream f("cli_suite.txt");
        f << "# smoke suite\n"
          << "kluyver\n"
          << "uchimura-2var alpha=5/2 r=3\n"
          << "gk-pk a=formal k=2\n";
    }
    CHECK(run("verify --suite-file cli_suite.txt --order 15 --json cli_s.json") == 0);
    CHECK(load("cli_s.json").size() == 3);
    CHECK(run("verify --suite-file /nonexistent.txt") == 3);
}
