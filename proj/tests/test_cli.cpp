#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "json.hpp"

#include "diagcount/cli.hpp"

using namespace diagcount;
using nlohmann::json;

namespace {

json parse_payload(const CommandResult& result) {
    json doc = json::parse(result.output);  // strict parse
    REQUIRE(doc.contains("payload"));
    return doc["payload"];
}

}  // namespace

TEST_CASE("count subcommand") {
    CommandResult brute = run_command({"count", "--n", "2", "--p", "2", "--k", "2",
                                       "--method", "brute"});
    CHECK(brute.exit_code == 0);
    CHECK(parse_payload(brute)["count"] == "112");

    CommandResult closed = run_command({"count", "--n", "3", "--p", "2", "--k", "1",
                                        "--method", "closed"});
    CHECK(closed.exit_code == 0);
    CHECK(parse_payload(closed)["count"] == "58");

    CommandResult semid = run_command({"count", "--n", "2", "--p", "3", "--k", "2",
                                       "--method", "semidirect"});
    CHECK(parse_payload(semid)["count"] == "3033");

    // usage errors
    CHECK(run_command({"count", "--n", "2", "--p", "4", "--k", "1"}).exit_code == 2);
    CHECK(run_command({"count", "--n", "5", "--p", "2", "--k", "1", "--method",
                       "closed"}).exit_code == 2);
    CHECK(run_command({"count", "--n", "2", "--p", "2"}).exit_code == 2);
    CHECK(run_command({"count", "--n", "2", "--p", "2", "--k", "2", "--method",
                       "nonsense"}).exit_code == 2);
}

TEST_CASE("counts are serialized as decimal strings") {
    CommandResult big = run_command({"count", "--n", "4", "--p", "7", "--k", "3"});
    CHECK(big.exit_code == 0);
    json payload = parse_payload(big);
    REQUIRE(payload["count"].is_string());
    std::string count = payload["count"].get<std::string>();
    CHECK(count.size() > 19);  // far past 2^63; native JSON numbers would mangle it
    for (char c : count) CHECK((c >= '0' && c <= '9'));
}

TEST_CASE("types subcommand") {
    CommandResult result = run_command({"types", "--n", "2", "--p", "2", "--k", "2"});
    CHECK(result.exit_code == 0);
    json payload = parse_payload(result);
    REQUIRE(payload["rows"].size() == 3);
    CHECK(payload["total"] == "112");
    CHECK(payload["rows"][0]["partition"] == "2");

    // a vanished type still shows up, with t = "0"
    json f2 = parse_payload(run_command({"types", "--n", "3", "--p", "2", "--k", "1"}));
    bool has_zero_row = false;
    for (const auto& row : f2["rows"]) {
        if (row["t"] == "0") has_zero_row = true;
    }
    CHECK(has_zero_row);
    CHECK(f2["total"] == "58");

    // n=4 census over Z_4 matches the assembled tables
    json z4 = parse_payload(run_command({"types", "--n", "4", "--p", "2", "--k", "2"}));
    CHECK(z4["rows"].size() == 14);
}

TEST_CASE("types CSV output") {
    CommandResult result =
        run_command({"types", "--n", "2", "--p", "2", "--k", "2", "--out", "csv"});
    CHECK(result.exit_code == 0);
    std::istringstream lines(result.output);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "partition,weights,t,c,s,contribution");
    int rows = 0;
    std::string last;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            ++rows;
            last = line;
        }
    }
    CHECK(rows == 4);  // 3 type rows + totals
    CHECK(last == "TOTAL,,,,,112");
}

TEST_CASE("graph subcommand") {
    CommandResult result =
        run_command({"graph", "--modulus", "27", "--entries", "0,1,2,4,5,11"});
    CHECK(result.exit_code == 0);
    json payload = parse_payload(result);
    CHECK(payload["aut"] == "4");
    CHECK(payload["classes"] == "78732");
    CHECK(payload["g"] == 6);
    CHECK(payload["distinct_weights"].size() == 3);
    CHECK(payload["tree"].size() == 5);
    CHECK_FALSE(payload.contains("dot"));

    json small = parse_payload(run_command({"graph", "--modulus", "4", "--entries", "0,1"}));
    CHECK(small["classes"] == "4");

    CHECK(run_command({"graph", "--modulus", "8", "--entries", "0,1,1"}).exit_code == 2);
    CHECK(run_command({"graph", "--modulus", "6", "--entries", "0,1"}).exit_code == 2);
    CHECK(run_command({"graph", "--modulus", "8", "--entries", "0,9"}).exit_code == 2);
    CHECK(run_command({"graph", "--modulus", "8", "--entries", "0,x"}).exit_code == 2);

    json with_dot = parse_payload(run_command(
        {"graph", "--modulus", "27", "--entries", "0,1,2,4,5,11", "--dot"}));
    CHECK(with_dot.contains("dot"));
    CHECK(with_dot["dot"].get<std::string>().find("weight=") != std::string::npos);

    // a single entry is the one-vertex graph: p^k classes, trivial symmetry
    json single = parse_payload(run_command({"graph", "--modulus", "8", "--entries", "5"}));
    CHECK(single["g"] == 1);
    CHECK(single["aut"] == "1");
    CHECK(single["classes"] == "8");
}

TEST_CASE("classes subcommand") {
    CHECK(parse_payload(run_command({"classes", "--g", "4"}))["a_g"] == "6");
    CHECK(parse_payload(run_command({"classes", "--g", "5"}))["a_g"] == "20");
    json two = parse_payload(run_command({"classes", "--g", "2"}));
    CHECK(two["a_g"] == "1");
    CHECK(two["classes"].size() == 1);
    CHECK(run_command({"classes", "--g", "9"}).exit_code == 2);
    CHECK(run_command({"classes", "--g", "0"}).exit_code == 2);
}

TEST_CASE("verify subcommand") {
    CommandResult ok = run_command({"verify", "--n", "2", "--p", "2", "--k", "2"});
    CHECK(ok.exit_code == 0);
    json payload = parse_payload(ok);
    CHECK(payload["all_ok"] == true);
    int equality_checks = 0;
    for (const auto& check : payload["checks"]) {
        if (check.contains("lhs")) {
            CHECK(check["lhs"] == check["rhs"]);
            if (check["lhs"] == "112") ++equality_checks;
        }
    }
    CHECK(equality_checks == 3);  // semidirect, closed, brute all report 112

    CHECK(run_command({"verify", "--n", "2", "--p", "6", "--k", "1"}).exit_code == 2);
    CHECK(run_command({"verify", "--n", "3", "--p", "2", "--k", "1"}).exit_code == 0);
}

TEST_CASE("proportion subcommand") {
    CommandResult result =
        run_command({"proportion", "--n", "2", "--k", "2", "--primes", "2,3,5"});
    CHECK(result.exit_code == 0);
    json payload = parse_payload(result);
    CHECK(payload["target"]["num"] == "1");
    CHECK(payload["target"]["den"] == "2");
    REQUIRE(payload["rows"].size() == 3);
    CHECK(payload["rows"][0]["ratio"]["num"] == "7");
    CHECK(payload["rows"][0]["ratio"]["den"] == "16");
    CHECK(payload["rows"][1]["ratio"]["num"] == "337");
    CHECK(payload["rows"][1]["ratio"]["den"] == "729");
    CHECK(payload["rows"][2]["ratio"]["num"] == "7561");
    CHECK(payload["rows"][2]["ratio"]["den"] == "15625");

    json unit = parse_payload(run_command({"proportion", "--n", "1", "--k", "1",
                                           "--primes", "2"}));
    CHECK(unit["rows"][0]["ratio"]["num"] == "1");
    CHECK(unit["rows"][0]["ratio"]["den"] == "1");

    CHECK(run_command({"proportion", "--n", "2", "--k", "1", "--primes", "2,9"})
              .exit_code == 2);
}

TEST_CASE("demo subcommand") {
    CommandResult result = run_command({"demo"});
    CHECK(result.exit_code == 0);
    json payload = parse_payload(result);
    CHECK(payload["z6_counterexample"] == true);
    CHECK(payload["jordan_identity"] == true);
    CHECK(payload["jordan_blocks_without_jcf"] == true);
    CHECK(payload["similar_diagonal_pairs"].size() == 3);

    json z4 = parse_payload(run_command({"demo", "--modulus", "4"}));
    CHECK(z4["similar_diagonal_pairs"].empty());
    CHECK(z4["scan_consistent"] == true);
}

TEST_CASE("output is byte-deterministic") {
    std::vector<std::vector<std::string>> invocations = {
        {"count", "--n", "2", "--p", "2", "--k", "2"},
        {"graph", "--modulus", "27", "--entries", "0,1,2,4,5,11"},
        {"types", "--n", "3", "--p", "2", "--k", "2", "--out", "csv"},
        {"classes", "--g", "5"},
        {"proportion", "--n", "2", "--k", "1", "--primes", "2,3,5,7"},
    };
    for (const auto& args : invocations) {
        CommandResult first = run_command(args);
        CommandResult second = run_command(args);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.output == second.output);
    }
}

TEST_CASE("text format") {
    CommandResult result = run_command({"count", "--n", "2", "--p", "2", "--k", "2",
                                        "--format", "text"});
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("payload.count: 112") != std::string::npos);
}

TEST_CASE("help") {
    CommandResult help = run_command({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("count") != std::string::npos);
    CommandResult none = run_command({});
    CHECK(none.exit_code == 0);
}
