#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "rzdg/harness.hpp"
#include "rzdg/parse.hpp"

using rzdg::check;
using rzdg::CheckStatus;
using rzdg::SweepSpec;
using rzdg::TheoremCheck;

TEST_CASE("classify_instance") {
    auto z25 = rzdg::classify_instance(rzdg::parse_ring("Z25"));
    CHECK(z25.factor_count == 1);
    CHECK(z25.local);
    CHECK(z25.zr_ideal);
    CHECK(z25.factor_diameters == std::vector<int>{1});
    CHECK(z25.beta == 5);

    auto z3z7 = rzdg::classify_instance(rzdg::parse_ring("Z3xZ7"));
    CHECK(z3z7.factor_count == 2);
    CHECK_FALSE(z3z7.local);
    CHECK(z3z7.factor_orders == std::vector<std::uint64_t>{3, 7});
    CHECK(z3z7.factor_diameters == std::vector<int>{0, 0});

    auto z4z9 = rzdg::classify_instance(rzdg::parse_ring("Z4xZ9"));
    CHECK(z4z9.factor_diameters == std::vector<int>{0, 1});
    CHECK_FALSE(z4z9.zr_ideal);

    CHECK(rzdg::classify_instance(rzdg::parse_ring("Z8")).zr_ideal);
    CHECK_FALSE(rzdg::classify_instance(rzdg::parse_ring("Z6")).zr_ideal);
}

TEST_CASE("claim catalog and selection") {
    const auto& catalog = rzdg::claim_catalog();
    CHECK(catalog.size() == 26);
    std::set<std::string> ids;
    for (const auto& info : catalog) ids.insert(info.id);
    CHECK(ids.size() == catalog.size());
    CHECK(ids.count("T3.1"));
    CHECK(ids.count("T4.2-bounds"));

    CHECK(rzdg::resolve_claims({}).size() == catalog.size());
    CHECK(rzdg::resolve_claims({"T3.1"}) == std::vector<std::string>{"T3.1"});
    CHECK(rzdg::resolve_claims({"T3.12"}) ==
          std::vector<std::string>{"T3.12a", "T3.12b", "T3.12c"});
    CHECK(rzdg::resolve_claims({"T4.2"}) ==
          std::vector<std::string>{"T4.2-bounds", "T4.2-structure"});
    CHECK(rzdg::resolve_claims({"P2.1"}) ==
          std::vector<std::string>{"P2.1-path", "P2.1-cycle"});
    CHECK_THROWS_AS(rzdg::resolve_claims({"bogus"}), rzdg::Error);
}

TEST_CASE("predict") {
    CHECK(rzdg::predict("T3.12a", "Z30") == "6");
    CHECK(rzdg::predict("T4.2-bounds", "Z9") == "[3,6]");
    CHECK_FALSE(rzdg::predict("T3.2", "Z2xZ3").has_value()); // |R_i| >= 5 fails
    CHECK(rzdg::predict("T3.2", "Z5xZ7") == "4");
    CHECK(rzdg::predict("P2.1-path", "path:9") == "6");
    CHECK_FALSE(rzdg::predict("T3.1", "Z7").has_value()); // field: empty graph
    CHECK_THROWS_AS(rzdg::predict("nope", "Z4"), rzdg::Error);
}

TEST_CASE("check: confirmed rows") {
    TheoremCheck row = check("P2.1-path", "path:9");
    CHECK(row.hypotheses_met);
    CHECK(row.predicted == "6");
    CHECK(row.computed == "6");
    CHECK(row.status == CheckStatus::confirmed);

    CHECK(check("CZp2-complete", "Z49").status == CheckStatus::confirmed);
    CHECK(check("CZp2-complete", "Z49").computed == "K6,gamma_R=2");
    CHECK(check("E2.1", "Z25").status == CheckStatus::confirmed);

    TheoremCheck t42 = check("T4.2-bounds", "Z8");
    CHECK(t42.predicted == "[3,4]");
    CHECK(t42.computed == "4");
    CHECK(t42.status == CheckStatus::confirmed);

    TheoremCheck structure = check("T4.2-structure", "Z9");
    CHECK(structure.predicted == "K3+K3,3");
    CHECK(structure.computed == "K3+K3,3");
    CHECK(structure.status == CheckStatus::confirmed);

    CHECK(check("T4.2-structure", "Z8").predicted == "2xK4");
    CHECK(check("L4.1", "Z8").status == CheckStatus::confirmed);
    CHECK(check("T3.3", "Z2xZ9").status == CheckStatus::confirmed);
    CHECK(check("T3.13", "Z6").status == CheckStatus::confirmed);
    CHECK(check("T3.13", "Z6").predicted == "<=2");
    CHECK(check("C3.9", "Z4|Z9").status == CheckStatus::confirmed);
    CHECK(check("S2-multi", "multi:2,4").predicted == "3");
    CHECK(check("S2-multi", "multi:2,4").status == CheckStatus::confirmed);
}

TEST_CASE("check: boundary instances reported faithfully") {
    TheoremCheck t31 = check("T3.1", "Z4");
    CHECK(t31.hypotheses_met);
    CHECK(t31.predicted == "2");
    CHECK(t31.computed == "1");
    CHECK(t31.status == CheckStatus::violated);

    TheoremCheck t312b = check("T3.12b", "Z15");
    CHECK(t312b.predicted == "4");
    CHECK(t312b.computed == "3");
    CHECK(t312b.status == CheckStatus::violated);

    CHECK(check("T3.12c", "Z4").status == CheckStatus::violated);
    CHECK(check("R3.7", "Z2xZ2").status == CheckStatus::violated);
    CHECK(check("R3.7", "Z2xZ2").computed == "2");
    CHECK(check("T4.2-bounds", "Z2").status == CheckStatus::violated);
    CHECK(check("T3.10", "Z2xZ2xZ2").status == CheckStatus::violated);
    CHECK(check("T3.10", "Z2xZ2xZ2").computed == "4");
}

TEST_CASE("check: skipped rows") {
    TheoremCheck skipped = check("T3.2", "Z2xZ3");
    CHECK_FALSE(skipped.hypotheses_met);
    CHECK(skipped.status == CheckStatus::skipped);
    CHECK(skipped.predicted.empty());
    // sub-threshold instances still carry the computed value
    CHECK(skipped.computed == "2");

    CHECK(check("T3.1", "Z7").status == CheckStatus::skipped);
    CHECK(check("T3.1", "Z7").computed.empty());
    CHECK(check("T3.12a", "Z12").status == CheckStatus::skipped);
}

TEST_CASE("violated families agree with the brute-force oracle") {
    // every boundary violation small enough for subset enumeration
    auto brute_of_ring = [](const char* lit) {
        return rzdg::gamma_r_brute(rzdg::zero_divisor_graph(rzdg::parse_ring(lit)));
    };
    CHECK(brute_of_ring("Z4") == 1);        // T3.1, T3.12c
    CHECK(brute_of_ring("Z2xZ2xZ2") == 4);  // T3.10, T3.11
    CHECK(brute_of_ring("Z2xZ2xZ3") == 5);
    CHECK(brute_of_ring("Z2xZ2xZ2xZ2") == 7);
    CHECK(brute_of_ring("Z2xZ2xZ5") == 5);
    CHECK(brute_of_ring("Z15") == 3); // T3.12b
    CHECK(brute_of_ring("Z21") == 3);
    CHECK(brute_of_ring("Z33") == 3);
    CHECK(brute_of_ring("Z2xZ5") == 2); // R3.7 star
    CHECK(brute_of_ring("Z3xZ5") == 3); // R3.7 bistar
    CHECK(brute_of_ring("Z2xZ4") == 3);
    CHECK(rzdg::gamma_r_brute(rzdg::total_graph(rzdg::parse_ring("Z2"))) == 2); // T4.2 bounds

    // and the matching harness rows report exactly these values
    CHECK(check("T3.10", "Z2xZ2xZ2xZ2").computed == "7");
    CHECK(check("T3.11", "Z2xZ2xZ5").computed == "5");
    CHECK(check("R3.7", "Z3xZ5").computed == "3");
}

TEST_CASE("status strings round-trip") {
    for (CheckStatus s : {CheckStatus::confirmed, CheckStatus::violated, CheckStatus::skipped,
                          CheckStatus::infeasible})
        CHECK(rzdg::status_from_string(rzdg::to_string(s)) == s);
    CHECK_FALSE(rzdg::status_from_string("??").has_value());
}

TEST_CASE("run_suite: empty range") {
    SweepSpec spec;
    spec.max_n = 0;
    rzdg::SweepReport report = rzdg::run_suite(spec);
    CHECK(report.rows.empty());
    CHECK(report.confirmed == 0);
    CHECK(report.violated == 0);
    CHECK(report.skipped == 0);
    CHECK(report.infeasible == 0);
}

TEST_CASE("run_suite: small sweep invariants") {
    SweepSpec spec;
    spec.max_n = 40;
    rzdg::SweepReport report = rzdg::run_suite(spec);
    CHECK(!report.rows.empty());
    int confirmed = 0, violated = 0, skipped = 0, infeasible = 0;
    for (const TheoremCheck& row : report.rows) {
        CHECK((row.status == CheckStatus::skipped) == !row.hypotheses_met);
        switch (row.status) {
        case CheckStatus::confirmed: ++confirmed; break;
        case CheckStatus::violated: ++violated; break;
        case CheckStatus::skipped: ++skipped; break;
        case CheckStatus::infeasible: ++infeasible; break;
        }
    }
    CHECK(report.confirmed == confirmed);
    CHECK(report.violated == violated);
    CHECK(report.skipped == skipped);
    CHECK(report.infeasible == infeasible);
    CHECK(report.infeasible == 0);

    // rows grouped by catalog order
    std::vector<std::string> claim_order;
    for (const TheoremCheck& row : report.rows)
        if (claim_order.empty() || claim_order.back() != row.claim)
            claim_order.push_back(row.claim);
    std::set<std::string> seen;
    for (const std::string& id : claim_order) CHECK(seen.insert(id).second);
}

TEST_CASE("run_suite: deterministic across runs and thread counts") {
    SweepSpec spec;
    spec.claims = {"P2.1", "T3.12", "T4.2", "S2-multi"};
    spec.max_n = 30;
    std::string first = rzdg::report_csv(rzdg::run_suite(spec));
    std::string second = rzdg::report_csv(rzdg::run_suite(spec));
    CHECK(first == second);
    spec.threads = 4;
    CHECK(rzdg::report_csv(rzdg::run_suite(spec)) == first);
}

TEST_CASE("report serialization") {
    SweepSpec spec;
    spec.claims = {"T3.12c", "S2-multi"};
    spec.max_n = 20;
    rzdg::SweepReport report = rzdg::run_suite(spec);
    REQUIRE(!report.rows.empty());

    std::string csv = rzdg::report_csv(report);
    CHECK(csv.rfind("claim,instance,hypotheses_met,predicted,computed,status,elapsed_ms\n", 0) ==
          0);
    CHECK(csv.find("T3.12c,Z4,true,2,1,VIOLATED,0") != std::string::npos);
    CHECK(csv.find("\"multi:1,1\"") != std::string::npos); // commas quoted

    std::string md = rzdg::report_markdown(report);
    CHECK(md.find("| claim | instance |") != std::string::npos);

    std::string text = rzdg::report_text(report);
    CHECK(text.find("VIOLATED 1") != std::string::npos);

    // JSON -> rows -> JSON is the identity
    std::string json = rzdg::report_json(report);
    rzdg::SweepReport parsed = rzdg::report_from_json(json);
    CHECK(rzdg::report_json(parsed) == json);
    CHECK(parsed.violated == report.violated);
}

TEST_CASE("pinned expectations") {
    SweepSpec spec;
    spec.claims = {"T3.1", "T3.12c"};
    spec.max_n = 30;
    rzdg::SweepReport report = rzdg::run_suite(spec);

    auto pinned = rzdg::pinned_from_report(report);
    CHECK(pinned == std::map<std::string, std::string>{{"T3.1:Z4", "VIOLATED"},
                                                       {"T3.12c:Z4", "VIOLATED"}});

    std::string json = rzdg::pinned_to_json(pinned);
    CHECK(rzdg::pinned_from_json(json) == pinned);

    CHECK(rzdg::compare_pinned(report, pinned).clean());

    auto missing_one = pinned;
    missing_one.erase("T3.1:Z4");
    auto diff = rzdg::compare_pinned(report, missing_one);
    CHECK(diff.unexpected == std::vector<std::string>{"T3.1:Z4"});

    auto extra = pinned;
    extra["T3.1:Z8"] = "VIOLATED";
    auto diff2 = rzdg::compare_pinned(report, extra);
    CHECK(diff2.missing == std::vector<std::string>{"T3.1:Z8"});

    // pinned entries for claims outside the sweep are not "missing"
    auto foreign = pinned;
    foreign["R3.7:Z2xZ2"] = "VIOLATED";
    CHECK(rzdg::compare_pinned(report, foreign).clean());
}
