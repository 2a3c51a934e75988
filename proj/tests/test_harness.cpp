#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "treecx/harness.hpp"

using namespace treecx;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("expected-value tables") {
    CHECK(expected_aut_order(2, 0) == 1);
    CHECK(expected_aut_order(2, 2) == 2);
    CHECK(expected_aut_order(2, 3) == 6);
    CHECK(expected_aut_order(1, 3) == 6);
    CHECK(expected_aut_order(1, 4) == 120);
    CHECK(expected_aut_order(1, 5) == 720);
    CHECK(expected_aut_order(0, 4) == 6);
    CHECK(expected_aut_order(0, 5) == 120);

    CHECK(expected_betti(0, 5) == std::vector<long long>{0, 6});
    CHECK(expected_betti(0, 6) == std::vector<long long>{0, 0, 24});
    CHECK(expected_betti(1, 2) == std::vector<long long>{0});
    CHECK(expected_betti(2, 2) == std::vector<long long>{0, 0, 0});

    CHECK(top_dimension(2, 1) == 1);
    CHECK(top_dimension(0, 5) == 1);
    CHECK(u_count_formula(2, 1, 1, 0) == 1);
}

TEST_CASE("default instances match the documented list") {
    auto insts = default_instances();
    REQUIRE(insts.size() == 9);
    CHECK(insts[0].d == 2);
    CHECK(insts[0].n == 0);
    CHECK(insts[8].d == 0);
    CHECK(insts[8].n == 5);
}

TEST_CASE("suite on a healthy instance passes everything") {
    SuiteOptions opts;
    opts.with_timestamps = false;
    VerificationReport r = run_verification_suite({{3, 1, {}}}, opts);
    CHECK(r.all_pass());
    for (const auto& rec : r.records) CHECK(rec.status == CheckStatus::Pass);
}

TEST_CASE("empty instance list passes with zero records") {
    VerificationReport r = run_verification_suite({}, {});
    CHECK(r.all_pass());
    CHECK(r.records.empty());
}

TEST_CASE("suite reports are byte-identical across runs without timestamps") {
    SuiteOptions opts;
    opts.with_timestamps = false;
    std::vector<Instance> insts = {{2, 1, {}}, {0, 4, {}}};
    std::string a = run_verification_suite(insts, opts).to_json(false).dump(2);
    std::string b = run_verification_suite(insts, opts).to_json(false).dump(2);
    CHECK(a == b);
}

TEST_CASE("budget overruns are skipped, not failed") {
    SuiteOptions opts;
    opts.max_cells = 5;
    VerificationReport r = run_verification_suite({{2, 3, {}}}, opts);
    CHECK(!r.records.empty());
    for (const auto& rec : r.records) CHECK(rec.status == CheckStatus::Skipped);
    CHECK(r.all_pass());  // skipped is not failed
}

TEST_CASE("check filter restricts the run") {
    SuiteOptions opts;
    opts.checks = {"homology"};
    VerificationReport r = run_verification_suite({{2, 1, {}}}, opts);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].id == "homology");
    CHECK(r.records[0].status == CheckStatus::Pass);
}

TEST_CASE("records are ordered by instance then check id") {
    VerificationReport r = run_verification_suite({{2, 1, {}}, {0, 4, {}}}, {});
    for (size_t i = 1; i < r.records.size(); ++i) {
        auto key = [](const CheckRecord& c) { return std::tie(c.d, c.n, c.id); };
        CHECK(key(r.records[i - 1]) <= key(r.records[i]));
    }
}

TEST_CASE("report json round-trips and excludes timings on request") {
    VerificationReport r = run_verification_suite({{2, 1, {}}}, {});
    nlohmann::ordered_json j = r.to_json(false);
    nlohmann::json parsed = nlohmann::json::parse(j.dump());
    CHECK(parsed["overall"] == "pass");
    CHECK(parsed["checks"][0].contains("elapsed_ms") == false);
    nlohmann::ordered_json with_time = r.to_json(true);
    CHECK(with_time["checks"][0].contains("elapsed_ms"));
}

TEST_CASE("exports") {
    SymmetricDeltaComplex x = build_complex(0, 5, {});
    export_complex_json(x, "/tmp/treecx_test_complex.json");
    nlohmann::json parsed = nlohmann::json::parse(slurp("/tmp/treecx_test_complex.json"));
    CHECK(parsed["f_vector"]["orbits"] == nlohmann::json::parse("[10,15]"));

    SymmetricDeltaComplex loop = build_complex(2, 1, {});
    export_skeleton_dot(loop, "/tmp/treecx_test_skel.dot");
    std::string dot = slurp("/tmp/treecx_test_skel.dot");
    CHECK(dot.find("v0 -- v0") != std::string::npos);

    export_trees_json(0, 5, 1, "/tmp/treecx_test_trees.json");
    CHECK(nlohmann::json::parse(slurp("/tmp/treecx_test_trees.json")).size() == 10);

    VerificationReport r = run_verification_suite({{2, 1, {}}}, {});
    export_report_json(r, false, "/tmp/treecx_test_report.json");
    std::string first = slurp("/tmp/treecx_test_report.json");
    export_report_json(r, false, "/tmp/treecx_test_report.json");
    CHECK(first == slurp("/tmp/treecx_test_report.json"));

    std::remove("/tmp/treecx_test_complex.json");
    std::remove("/tmp/treecx_test_skel.dot");
    std::remove("/tmp/treecx_test_trees.json");
    std::remove("/tmp/treecx_test_report.json");
}

TEST_CASE("reconstruct fuzz") {
    FuzzReport clean = reconstruct_fuzz(build_complex(2, 1, {}), 0);
    CHECK(clean.cells_checked == 1);
    CHECK(clean.failures == 0);

    // the mirrored pairs lose exactly one labelled cell per shared input
    FuzzReport mirrored = reconstruct_fuzz(build_complex(2, 2, {}), 0);
    CHECK(mirrored.cells_checked == 16);
    CHECK(mirrored.failures == 2);

    // seeded sampling is deterministic
    SymmetricDeltaComplex big = build_complex(2, 3, {});
    FuzzReport s1 = reconstruct_fuzz(big, 42, 50);
    FuzzReport s2 = reconstruct_fuzz(big, 42, 50);
    CHECK(s1.cells_checked == 50);
    CHECK(s1.failures == s2.failures);
    CHECK(s1.to_json().dump() == s2.to_json().dump());
}
