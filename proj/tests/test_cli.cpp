#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "leo/cli.hpp"

using leo::cli::run;
using leo::cli::Status;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "leo_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string save(const leo::cli::CommandResult& r, const std::string& name) {
    auto path = scratch(name);
    std::ofstream(path) << leo::cli::to_document(r).dump(2);
    return path.string();
}

}  // namespace

TEST_CASE("leopoldt family certificate at t = 10, p = 5") {
    auto r = run({"leopoldt", "family", "--preset", "cubic_s3", "--t", "10", "-p", "5", "--json"});
    REQUIRE(r.status == Status::Ok);
    CHECK(leo::cli::exit_code(r) == 0);
    CHECK(r.json_output);
    CHECK(r.payload["outcome"] == "leopoldt");
    CHECK(r.payload["m"] == 3);
    CHECK(r.payload["certificate"]["m"] == 3);
    CHECK(r.payload["certificate"]["claim"] == "leopoldt");
    CHECK(r.payload["member"]["closure"] == "S3");

    // the emitted document re-verifies, a tampered one does not
    auto path = save(r, "cert.json");
    CHECK(run({"leopoldt", "recheck", path}).status == Status::Ok);
    auto doc = leo::cli::to_document(r);
    doc["payload"]["certificate"]["m"] = 4;
    std::ofstream(scratch("bad.json")) << doc.dump();
    auto bad = run({"leopoldt", "recheck", scratch("bad.json").string()});
    CHECK(bad.status == Status::Error);
    CHECK(leo::cli::exit_code(bad) == leo::cli::kExitError);
}

TEST_CASE("defects solve reproduces the S4 assignment") {
    auto r = run({"defects", "solve", "--group", "S4", "--base", "Q", "--conjugation", "(0 3)(1 2)", "--fact", "C1=2"});
    REQUIRE(r.status == Status::Ok);
    CHECK(r.payload["unique"] == true);
    const auto& a = r.payload["assignments"][0];
    // C2b is the class inside the normal V4 (V4b); V4a are the non-normal Klein groups
    for (const char* one : {"C2a", "V4a", "C4", "D8"}) CHECK_MESSAGE(a[one] == 1, one);
    for (const char* two : {"C1", "C2b", "V4b"}) CHECK_MESSAGE(a[two] == 2, two);
    for (const char* zero : {"S3", "C3", "A4", "S4"}) CHECK_MESSAGE(a[zero] == 0, zero);

    auto z = run({"defects", "solve", "--group", "S4", "--conjugation", "(0 3)(1 2)", "--fact", "d(C1)=0"});
    REQUIRE(z.status == Status::Ok);
    REQUIRE(z.payload["assignments"].size() == 1);
    for (const auto& [k, v] : z.payload["assignments"][0].items()) CHECK(v == 0);

    auto none = run({"defects", "solve", "--group", "S4", "--conjugation", "(0 3)(1 2)", "--fact", "C1=1"});
    CHECK(none.status == Status::Error);
    CHECK(none.payload["error"] == "EmptyFeasibleSet");

    auto rels = run({"defects", "relations", "--group", "S4"});
    CHECK(rels.payload["relations"].size() == 6);
}

TEST_CASE("frobenius relation for S3") {
    auto r = run({"relations", "derive", "--group", "S3", "--method", "frobenius"});
    REQUIRE(r.status == Status::Ok);
    CHECK(r.payload["relation"]["text"] == "1 = 2/3 e(C2) x3 + e(C3) - 2 e(S3)");
    std::map<std::string, std::vector<std::string>> coeffs;
    for (const auto& t : r.payload["relation"]["terms"])
        coeffs[t["subgroup"]["label"].get<std::string>()].push_back(t["coeff"].get<std::string>());
    CHECK(coeffs["C1"] == std::vector<std::string>{"-1"});
    CHECK(coeffs["C2"] == std::vector<std::string>{"2/3", "2/3", "2/3"});
    CHECK(coeffs["C3"] == std::vector<std::string>{"1"});
    CHECK(coeffs["S3"] == std::vector<std::string>{"-2"});
}

TEST_CASE("relation documents round-trip through relations verify") {
    std::vector<std::vector<std::string>> derivations = {
        {"--group", "S4", "--method", "gilman"},
        {"--group", "D8", "--method", "gilman", "--subgroup", "V4a"},
        {"--group", "A4", "--method", "artin"},
        {"--group", "A4", "--method", "frobenius"},
        {"--group", "V4", "--method", "cover", "--subgroups", "C2a,C2b,C2c"},
        {"--group", "S3", "--method", "partition", "--subgroups", "C2,C3"},
        {"--group", "V4", "--method", "kani", "--subgroups", "C2a,C2b,C2c"},
        {"--gen", "(0 1 2 3 4)", "--gen", "(1 2 4 3)", "--method", "frobenius"},
    };
    int n = 0;
    for (auto args : derivations) {
        args.insert(args.begin(), {"relations", "derive"});
        args.push_back("--json");
        auto r = run(args);
        REQUIRE_MESSAGE(r.status == Status::Ok, args[3]);
        auto path = save(r, "rel" + std::to_string(n++) + ".json");
        auto v = run({"relations", "verify", path});
        CHECK_MESSAGE(v.status == Status::Ok, path);
        CHECK(v.payload["verified"] == true);
    }
    // perturbing one coefficient breaks verification
    auto r = run({"relations", "derive", "--group", "S4", "--method", "gilman", "--json"});
    auto doc = leo::cli::to_document(r);
    doc["payload"]["relation"]["terms"][0]["coeff"] = "5";
    std::ofstream(scratch("broken.json")) << doc.dump();
    auto v = run({"relations", "verify", scratch("broken.json").string()});
    CHECK(v.status == Status::Error);
    CHECK(v.payload["verified"] == false);
}

TEST_CASE("usage errors and domain errors") {
    auto u = run({"leopoldt", "family", "--preset", "cubic_s3"});
    CHECK(u.status == Status::Error);
    CHECK(u.usage_error);
    CHECK(leo::cli::exit_code(u) == leo::cli::kExitUsage);
    CHECK(u.payload["error"] == "UsageError");

    auto m = run({"relations", "derive", "--group", "S3", "--method", "magic"});
    CHECK(leo::cli::exit_code(m) == leo::cli::kExitUsage);

    auto q = run({"leopoldt", "family", "--preset", "nakamula_d8", "--t", "7", "-p", "3"});
    CHECK(q.status == Status::Error);
    CHECK(q.payload["error"] == "NotPMaximal");
    auto forced = run({"--assume-p-maximal", "leopoldt", "family", "--preset", "nakamula_d8", "--t", "7", "-p", "3"});
    CHECK(forced.payload.value("error", "") != "NotPMaximal");

    auto up = run({"leopoldt", "family", "--preset", "no_such", "--t", "7", "-p", "3"});
    CHECK(up.payload["error"] == "UnknownPreset");
    auto frob = run({"relations", "derive", "--group", "S4", "--method", "frobenius"});
    CHECK(frob.status == Status::Error);
    CHECK(run({"--help"}).status == Status::Ok);
}

TEST_CASE("inconclusive outcomes have their own exit code") {
    auto r = run({"--max-m", "2", "leopoldt", "family", "--preset", "cubic_s3", "--t", "12", "-p", "2"});
    CHECK(r.status == Status::Inconclusive);
    CHECK(leo::cli::exit_code(r) == leo::cli::kExitInconclusive);
    CHECK(r.payload["outcome"] == "inconclusive");
    auto partial = run({"leopoldt", "verify", "--poly", "x^3-100x-1", "--units", "x", "-p", "5"});
    CHECK(partial.payload["error"] == "RankMismatch");
    auto zp = run({"leopoldt", "verify", "--poly", "x^3-100x-1", "--units", "x", "-p", "5", "--partial-rank"});
    CHECK(zp.status == Status::Ok);
    CHECK(zp.payload["outcome"] == "zp-independence");
}

TEST_CASE("scans are sorted and independent of jobs and seed order") {
    auto a = run({"leopoldt", "scan", "--preset", "cubic_s3", "--t", "2..24", "-p", "2,5,7", "--json"});
    auto b = run({"--jobs", "3", "--seed-order", "reverse", "leopoldt", "scan", "--preset", "cubic_s3", "--t", "2..24",
                  "-p", "7,5,2", "--json"});
    REQUIRE(a.status == Status::Ok);
    CHECK(a.payload == b.payload);
    CHECK(a.payload["counts"]["certified"].get<int>() > 5);
}

TEST_CASE("propagation, infinitude and orchestration verbs") {
    auto p = run({"leopoldt", "propagate", "--preset", "cubic_s3", "--t0", "10", "-p", "2", "--members", "3"});
    REQUIRE(p.status == Status::Ok);
    CHECK(p.payload["modulus"] == "8");  // big integers are strings in family documents
    CHECK(p.payload["members"].size() == 3);

    auto inf = run({"infinitude", "--family", "cubic_s3", "--class", "0 mod 10", "--count", "4"});
    REQUIRE(inf.status == Status::Ok);
    CHECK(inf.payload["members"].size() == 4);
    auto odd = run({"infinitude", "--family", "cubic_s3", "--class", "0", "--modulus", "1", "--odd-valuation", "10"});
    CHECK(odd.payload["odd_valuation_primes"].size() == 10);

    auto o = run({"orchestrate", "--primes", "2,5", "--count", "5"});
    REQUIRE(o.status == Status::Ok);
    CHECK(o.payload["class"]["residue"] == "0");
    CHECK(o.payload["class"]["modulus"] == "10");
    auto ext = run({"orchestrate", "--primes", "3,7", "--anchor", "2:3:2:cited computation", "--count", "2"});
    REQUIRE(ext.status == Status::Ok);
    CHECK(ext.payload["class"]["modulus"] == "63");
}

TEST_CASE("group and character verbs") {
    auto g = run({"group", "show", "--group", "Aff(7)"});
    REQUIRE(g.status == Status::Ok);
    CHECK(g.payload["order"] == 42);
    CHECK(!g.payload["frobenius"].is_null());
    auto c = run({"chars", "table", "--group", "S4"});
    CHECK(c.payload["degrees"] == std::vector<int>{1, 1, 2, 3, 3});
    CHECK(c.payload["nonlinear_degrees"] == std::vector<int>{2, 3});
    auto plan = run({"defects", "plan", "--group", "S3"});
    CHECK(plan.status == Status::Ok);
}
