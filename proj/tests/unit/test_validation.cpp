#include <doctest.h>

#include <numbers>
#include <set>

#include "levyhit/validation.hpp"

using namespace levyhit;

TEST_CASE("check catalog") {
    auto cat = check_catalog();
    std::set<std::string> names;
    std::set<int> criteria;
    for (const auto& c : cat) {
        CHECK(names.insert(c.name).second);
        CHECK_FALSE(c.anchor.empty());
        criteria.insert(c.criterion);
    }
    for (int k = 1; k <= 10; ++k) CHECK(criteria.count(k) == 1);
}

TEST_CASE("a weakened constant is named in the report") {
    ValidationOptions o;
    o.suite = Suite::quick;
    o.only = {"point_tail_explicit_upper", "point_tail_tilde_upper"};
    o.constants.tail_upper_explicit = 5.0 * std::pow(std::numbers::pi, 3);
    auto rep = run_validation({}, o);
    REQUIRE(rep.checks.size() == 2);
    for (const auto& c : rep.checks) {
        if (c.name == "point_tail_explicit_upper") {
            CHECK(c.status == CheckStatus::fail);
            CHECK(c.message.find("below") != std::string::npos);
        } else {
            CHECK(c.status == CheckStatus::pass);
        }
    }
    CHECK_FALSE(rep.all_passed());
    CHECK_FALSE(rep.criteria().at(4));
}

TEST_CASE("suites filter checks and per-spec checks skip unmet hypotheses") {
    ValidationOptions o;
    o.suite = Suite::quick;
    o.acceptance = false;
    o.only = {"point_tail_sanity", "mc_interval_monotone"};
    auto rep = run_validation({SymbolSpec::stable(0.8), SymbolSpec::brownian()}, o);
    REQUIRE(rep.checks.size() == 2);  // the mc check is not in the quick suite
    CHECK(rep.checks[0].status == CheckStatus::skip);  // points are polar for alpha < 1
    CHECK(rep.checks[1].status == CheckStatus::pass);
    CHECK(rep.all_passed());
    const auto j = rep.to_json();
    CHECK(j["checks"][0]["spec"] == "stable(0.8)");
    CHECK(j.dump().find("seconds") == std::string::npos);
}

TEST_CASE("reports are reproducible") {
    ValidationOptions o;
    o.suite = Suite::mc;
    o.acceptance = false;
    o.only = {"mc_interval_monotone"};
    o.seed = 5;
    auto a = run_validation({SymbolSpec::stable(1.5)}, o).to_json().dump();
    auto b = run_validation({SymbolSpec::stable(1.5)}, o).to_json().dump();
    CHECK(a == b);
    CHECK_THROWS(suite_from_string("slow"));
}
