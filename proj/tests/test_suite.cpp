#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bbls/suite.hpp"

using namespace bbls;

TEST_CASE("suite iteration order and counts") {
    SuiteConfig cfg;
    cfg.dimensions = {20};
    cfg.function_ids = {1, 2};
    cfg.instances = {1, 2, 3};
    const auto problems = suite_iter(cfg);
    REQUIRE(problems.size() == 6);
    REQUIRE(problems[0].function_id == 1);
    REQUIRE(problems[0].instance == 1);
    REQUIRE(problems[2].function_id == 1);
    REQUIRE(problems[2].instance == 3);
    REQUIRE(problems[3].function_id == 2);
    REQUIRE(problems[5].instance == 3);

    const auto full = default_suite_config();
    REQUIRE(full.size() == 6u * 24u * 15u);
    REQUIRE(suite_iter(full).size() == 2160);
}

TEST_CASE("flat index round trip") {
    SuiteConfig cfg;
    cfg.dimensions = {20, 40};
    cfg.function_ids = {1, 7, 24};
    cfg.instances = {2, 5};
    const auto problems = suite_iter(cfg);
    for (std::size_t i = 0; i < problems.size(); ++i) {
        REQUIRE(index_of(cfg, problems[i]) == i);
        const auto d = descriptor_at(cfg, i);
        REQUIRE(d == problems[i]);
    }
    REQUIRE_THROWS_AS(descriptor_at(cfg, problems.size()), std::out_of_range);
    REQUIRE_THROWS_AS(index_of(cfg, ProblemDescriptor{3, 20, 2, "", 1}),
                      std::invalid_argument);
}

TEST_CASE("iteration is deterministic") {
    const auto cfg = default_suite_config();
    const auto a = suite_iter(cfg);
    const auto b = suite_iter(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
}

TEST_CASE("config validation") {
    SuiteConfig cfg;
    cfg.dimensions = {20, 20};
    cfg.function_ids = {1};
    cfg.instances = {1};
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg.dimensions = {17};
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.test_mode = true;
    REQUIRE_NOTHROW(cfg.validate());

    cfg.dimensions = {20};
    cfg.function_ids = {25};
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.function_ids = {24};
    cfg.instances = {-1};
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);

    SuiteConfig empty;
    REQUIRE(suite_iter(empty).empty());
}

TEST_CASE("target grid") {
    const TargetSet t = default_targets(3.5);
    REQUIRE(t.count() == 51);
    REQUIRE(t.precisions.front() == 100.0);
    REQUIRE(t.precisions.back() == Catch::Approx(1e-8).epsilon(1e-12));
    REQUIRE(t.target(0) == 3.5 + 100.0);
    REQUIRE(t.target(50) == Catch::Approx(3.5 + 1e-8).epsilon(1e-12));
    for (std::size_t k = 1; k < t.count(); ++k)
        REQUIRE(t.precisions[k] < t.precisions[k - 1]);
}

TEST_CASE("config file parsing") {
    std::istringstream in(
        "# example\n"
        "dimensions=20,40\n"
        "functions=1,2,3\n"
        "instances=1,2  # trailing comment\n"
        "budget_multiplier=250\n"
        "\n");
    const FileConfig fc = parse_config_text(in);
    REQUIRE(fc.suite.dimensions == std::vector<int>{20, 40});
    REQUIRE(fc.suite.function_ids == std::vector<int>{1, 2, 3});
    REQUIRE(fc.suite.instances == std::vector<std::int64_t>{1, 2});
    REQUIRE(fc.budget_multiplier == 250);

    std::istringstream bad_key("budget=3\n");
    REQUIRE_THROWS_AS(parse_config_text(bad_key), std::invalid_argument);
    std::istringstream bad_int("functions=1,x\n");
    REQUIRE_THROWS_AS(parse_config_text(bad_int), std::invalid_argument);
    std::istringstream no_eq("dimensions 20\n");
    REQUIRE_THROWS_AS(parse_config_text(no_eq), std::invalid_argument);
}
