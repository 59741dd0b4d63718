#include <rcf/cli.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace rcf;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    std::string current;
    while (std::getline(in, current))
        if (current == line) return true;
    return false;
}

}  // namespace

TEST_CASE("table command", "[cli]") {
    const RunResult u1 = run({"table", "--kind=U1r", "--max-n=4"});
    CHECK(u1.code == 0);
    CHECK(contains_line(u1.out, "4,1,-4*r^3-42*r^2-98*r-36"));
    CHECK(contains_line(u1.out, "0,0,1"));

    const RunResult trivial = run({"table", "--kind=U2r", "--max-n=0"});
    CHECK(trivial.code == 0);
    CHECK(trivial.out == "0,0,1\n");

    const RunResult numeric = run({"table", "--kind=U2r", "--max-n=3", "--r=2"});
    CHECK(numeric.code == 0);
    CHECK(contains_line(numeric.out, "3,2,11"));

    SECTION("triangle and matrix aliases agree") {
        CHECK(run({"table", "--kind=u_r", "--max-n=3"}).out == run({"table", "--kind=U1r", "--max-n=3"}).out);
        CHECK(run({"table", "--kind=u", "--max-n=3"}).out == run({"table", "--kind=A1", "--max-n=3"}).out);
    }

    SECTION("pascal kind") {
        const RunResult pascal = run({"table", "--kind=pascal", "--max-n=4"});
        CHECK(pascal.code == 0);
        CHECK(contains_line(pascal.out, "4,1,4*r^3"));
        const RunResult at2 = run({"table", "--kind=pascal", "--max-n=4", "--r=2"});
        CHECK(contains_line(at2.out, "4,1,32"));
    }

    SECTION("usage errors exit 2") {
        CHECK(run({"table", "--kind=U1r"}).code == 2);
        CHECK(run({"table", "--kind=nope", "--max-n=2"}).code == 2);
        CHECK(run({"table", "--kind=u", "--max-n=2", "--r=1"}).code == 2);
        CHECK(run({"table", "--kind=u", "--max-n=-1"}).code == 2);
        CHECK(run({"table", "--kind=u", "--max-n=2", "--format=xml"}).code == 2);
        CHECK(run({"table", "--kind=u", "--max-n=2", "--bogus=1"}).code == 2);
    }
}

TEST_CASE("eval command routes", "[cli]") {
    CHECK(run({"eval", "--kind=u_r", "--n=5", "--k=3", "--route=stirling"}).out == "10*r^2+120*r+273\n");
    CHECK(run({"eval", "--kind=U_r", "--n=7", "--k=7", "--route=recurrence"}).out == "1\n");
    CHECK(run({"eval", "--kind=U_r", "--n=3", "--k=2", "--route=explicit", "--r=2"}).out == "11\n");
    CHECK(run({"eval", "--kind=u_r", "--n=4", "--k=3", "--route=sigma"}).out == "-4*r-14\n");
    CHECK(run({"eval", "--kind=U_r", "--n=4", "--k=2", "--route=h"}).out == "6*r^2+20*r+21\n");
    CHECK(run({"eval", "--kind=U_r", "--n=3", "--k=2", "--route=geom-rec", "--r=2"}).out == "11\n");
    CHECK(run({"eval", "--kind=u_r", "--n=3", "--k=1", "--route=from-r0"}).out == "3*r^2+10*r+4\n");
    CHECK(run({"eval", "--kind=u", "--n=4", "--k=2", "--route=recurrence"}).out == "49\n");
    CHECK(run({"eval", "--kind=U", "--n=4", "--k=2", "--route=explicit"}).out == "21\n");
    CHECK(run({"eval", "--kind=u", "--n=4", "--k=2", "--route=stirling"}).out == "49\n");

    SECTION("route/kind mismatches exit 2") {
        CHECK(run({"eval", "--kind=u_r", "--n=3", "--k=2", "--route=explicit"}).code == 2);
        CHECK(run({"eval", "--kind=U_r", "--n=3", "--k=2", "--route=sigma"}).code == 2);
        CHECK(run({"eval", "--kind=u", "--n=3", "--k=2", "--route=from-r0"}).code == 2);
        CHECK(run({"eval", "--kind=U_r", "--n=3", "--k=2", "--route=explicit"}).code == 2);  // missing --r
        CHECK(run({"eval", "--kind=u", "--n=3", "--k=2", "--route=recurrence", "--r=1"}).code == 2);
        CHECK(run({"eval", "--kind=u_r", "--n=3", "--k=0", "--route=row-rec"}).code == 2);
        CHECK(run({"eval", "--kind=u_r", "--n=3", "--k=4", "--route=recurrence"}).code == 2);
    }

    SECTION("csv and json record formats") {
        CHECK(run({"eval", "--kind=u_r", "--n=5", "--k=3", "--route=stirling", "--format=csv"}).out ==
              "5,3,10*r^2+120*r+273,stirling\n");
        const RunResult json = run({"eval", "--kind=u_r", "--n=5", "--k=3", "--route=stirling", "--format=json"});
        const auto parsed = nlohmann::json::parse(json.out);
        CHECK(parsed[0]["n"] == 5);
        CHECK(parsed[0]["k"] == 3);
        CHECK(parsed[0]["value"] == "10*r^2+120*r+273");
        CHECK(parsed[0]["route"] == "stirling");
    }
}

TEST_CASE("verify command", "[cli]") {
    const RunResult fact = run({"verify", "--suite=factorization", "--max-n=5"});
    CHECK(fact.code == 0);
    CHECK(fact.out.find("fail") == std::string::npos);

    const RunResult trivial = run({"verify", "--suite=routes", "--max-n=0"});
    CHECK(trivial.code == 0);

    SECTION("routes report records the doubled-j0 counterexample") {
        const RunResult routes = run({"verify", "--suite=routes", "--max-n=4", "--r=0..2"});
        CHECK(routes.code == 0);
        CHECK(contains_line(routes.out,
                            "routes,explicit-j0-doubled-counterexample,pass,"
                            "(n=3 k=2 r=2) doubled-weight=13 recurrence=11"));
    }

    SECTION("remaining suites pass on reduced ranges") {
        CHECK(run({"verify", "--suite=orthogonality", "--max-n=6"}).code == 0);
        CHECK(run({"verify", "--suite=ogf", "--max-n=6", "--r=0..2"}).code == 0);
        CHECK(run({"verify", "--suite=symfunc", "--max-n=6"}).code == 0);
        CHECK(run({"verify", "--suite=logconcavity", "--max-n=10", "--r=0..2"}).code == 0);
        CHECK(run({"verify", "--suite=distribution", "--max-n=8", "--r=0..2"}).code == 0);
    }

    SECTION("usage errors exit 2") {
        CHECK(run({"verify", "--suite=unknown"}).code == 2);
        CHECK(run({"verify"}).code == 2);
        CHECK(run({"verify", "--suite=routes", "--r=5..1"}).code == 2);
        CHECK(run({"verify", "--suite=routes", "--r=-2..1"}).code == 2);
    }

    SECTION("json format") {
        const RunResult json = run({"verify", "--suite=factorization", "--max-n=3", "--format=json"});
        CHECK(json.code == 0);
        const auto parsed = nlohmann::json::parse(json.out);
        CHECK(parsed.is_array());
        for (const auto& row : parsed) CHECK(row["status"] == "pass");
    }
}

TEST_CASE("dist command", "[cli]") {
    const RunResult basic = run({"dist", "--n=2", "--r=0"});
    CHECK(basic.code == 0);
    CHECK(basic.out ==
          "n,2\n"
          "r,0\n"
          "pmf,0,0\n"
          "pmf,1,1/2\n"
          "pmf,2,1/2\n"
          "mean,3/2\n"
          "variance,1/4\n");

    const RunResult certain = run({"dist", "--n=1", "--r=0"});
    CHECK(contains_line(certain.out, "pmf,0,0"));
    CHECK(contains_line(certain.out, "pmf,1,1"));

    SECTION("sampling stays within the printed band and reruns identically") {
        const std::vector<std::string> args{"dist", "--n=2", "--r=0", "--samples=100000", "--seed=42"};
        const RunResult first = run(args);
        CHECK(first.code == 0);
        CHECK(contains_line(first.out, "within_band,true"));
        CHECK(first.out == run(args).out);
    }

    SECTION("usage errors exit 2") {
        CHECK(run({"dist", "--n=0"}).code == 2);
        CHECK(run({"dist"}).code == 2);
        CHECK(run({"dist", "--n=2", "--r=-1"}).code == 2);
        CHECK(run({"dist", "--n=2", "--samples=0"}).code == 2);
    }

    SECTION("json format carries the same exact strings") {
        const RunResult json = run({"dist", "--n=2", "--r=0", "--format=json"});
        const auto parsed = nlohmann::json::parse(json.out);
        CHECK(parsed["pmf"] == std::vector<std::string>({"0", "1/2", "1/2"}));
        CHECK(parsed["mean"] == "3/2");
        CHECK(parsed["variance"] == "1/4");
    }
}

TEST_CASE("json table output round-trips through the recurrences", "[cli]") {
    const int max_n = 6;
    for (const char* kind : {"U1r", "U2r"}) {
        const RunResult result =
            run({"table", std::string("--kind=") + kind, "--max-n=" + std::to_string(max_n), "--format=json"});
        REQUIRE(result.code == 0);
        const auto parsed = nlohmann::json::parse(result.out);

        std::map<std::pair<int, int>, PolyR> table;
        for (const auto& rec : parsed)
            table[{rec["n"].get<int>(), rec["k"].get<int>()}] = poly_parse(rec["value"].get<std::string>());

        auto value = [&](int n, int k) -> PolyR {
            const auto it = table.find({n, k});
            return it == table.end() ? PolyR{} : it->second;
        };

        CHECK(value(0, 0) == PolyR{1});
        const bool first = std::string(kind) == "U1r";
        for (int n = 1; n <= max_n; ++n)
            for (int k = 0; k <= n; ++k) {
                const PolyR expected =
                    first ? value(n - 1, k - 1) -
                                (PolyR{BigInt(n - 1) * (n - 1)} + PolyR::variable()) * value(n - 1, k)
                          : value(n - 1, k - 1) +
                                (PolyR{BigInt(k) * k} + PolyR::variable()) * value(n - 1, k);
                CHECK(value(n, k) == expected);
            }
    }
}

TEST_CASE("deterministic output and exit codes", "[cli]") {
    const std::vector<std::string> args{"verify", "--suite=factorization", "--max-n=4"};
    CHECK(run(args).out == run(args).out);

    CHECK(run({}).code == 2);
    CHECK(run({"unknown"}).code == 2);
    CHECK(run({"help"}).code == 0);
}
