#include "doctest.h"

#include <random>

#include "motifeval/analysis.hpp"
#include "oracles.hpp"

using namespace motifeval;

TEST_CASE("kendall_tau examples") {
    const std::vector<double> a{1, 2, 3, 4};
    CHECK(kendall_tau(a, a) == doctest::Approx(1.0));
    CHECK(kendall_tau(a, std::vector<double>{4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(kendall_tau(a, std::vector<double>{1, 3, 2, 4}) == doctest::Approx(4.0 / 6.0));
    // Direction flips orientation.
    CHECK(kendall_tau(a, a, Direction::higher_better, Direction::lower_better) == doctest::Approx(-1.0));
}

TEST_CASE("kendall_tau errors") {
    CHECK_THROWS_AS(kendall_tau(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), DegenerateInput);
    CHECK_THROWS_AS(kendall_tau(std::vector<double>{1}, std::vector<double>{1}), DegenerateInput);
    CHECK_THROWS(kendall_tau(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}));
}

TEST_CASE("kendall_tau matches pair enumeration, is symmetric and rank-invariant") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = std::uniform_int_distribution<std::size_t>(2, 60)(rng);
        std::uniform_int_distribution<int> v(0, 6);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = v(rng);
            b[i] = v(rng);
        }
        a[0] = 0;
        a[1] = 1;
        b[0] = 1;
        b[1] = 0;
        const double expected = oracle::kendall_tau_pairs(a, b);
        CHECK(kendall_tau(a, b) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(kendall_tau(b, a) == doctest::Approx(expected).epsilon(1e-12));
        std::vector<double> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = std::exp(a[i]) * 3 + 1;
        CHECK(kendall_tau(c, b) == doctest::Approx(expected).epsilon(1e-12));
    }
}

namespace {

ResultsTable two_dataset_table() {
    // A = 1..5 in both datasets; B has one discordant pair in d1 and two in d2.
    ResultsTable t;
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b1{1, 2, 3, 5, 4};
    const std::vector<double> b2{2, 1, 3, 5, 4};
    for (std::size_t i = 0; i < 5; ++i) {
        const auto s = std::to_string(i);
        t.add({"d1", s, "m", "A", a[i]});
        t.add({"d1", s, "m", "B", b1[i]});
        t.add({"d2", s, "m", "A", a[i]});
        t.add({"d2", s, "m", "B", b2[i]});
    }
    return t;
}

}  // namespace

TEST_CASE("tau_matrix combined and per-dataset modes") {
    const auto t = two_dataset_table();
    // Pair enumeration: d1 has 1 discordant pair of 10 (tau 0.8), d2 has 2 (tau 0.6).
    CHECK(oracle::kendall_tau_pairs({1, 2, 3, 4, 5}, {1, 2, 3, 5, 4}) == doctest::Approx(0.8));
    CHECK(oracle::kendall_tau_pairs({1, 2, 3, 4, 5}, {2, 1, 3, 5, 4}) == doctest::Approx(0.6));
    const auto avg = tau_matrix(t, TauMode::per_dataset_average);
    REQUIRE(avg.metrics == std::vector<std::string>{"A", "B"});
    CHECK(avg.tau(0, 1) == doctest::Approx(0.7));
    CHECK(avg.tau(1, 0) == avg.tau(0, 1));
    CHECK(avg.tau(0, 0) == 1.0);

    const auto combined = tau_matrix(t, TauMode::combined);
    CHECK(combined.tau(0, 0) == 1.0);
    CHECK(combined.tau(0, 1) > 0.0);
}

TEST_CASE("tau_matrix hand-built 0.4 / 0.8 average") {
    // Five items give 10 pairs: tau 0.4 needs 3 discordant pairs, tau 0.8 needs 1.
    ResultsTable t;
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b1{3, 1, 2, 5, 4};  // discordant: (1,2),(1,3),(4,5) -> 3
    const std::vector<double> b2{1, 2, 3, 5, 4};  // discordant: (4,5) -> 1
    CHECK(oracle::kendall_tau_pairs(a, b1) == doctest::Approx(0.4));
    CHECK(oracle::kendall_tau_pairs(a, b2) == doctest::Approx(0.8));
    for (std::size_t i = 0; i < 5; ++i) {
        t.add({"d1", std::to_string(i), "m", "A", a[i]});
        t.add({"d1", std::to_string(i), "m", "B", b1[i]});
        t.add({"d2", std::to_string(i), "m", "A", a[i]});
        t.add({"d2", std::to_string(i), "m", "B", b2[i]});
    }
    CHECK(tau_matrix(t, TauMode::per_dataset_average).tau(0, 1) == doctest::Approx(0.6));
}

TEST_CASE("tau_matrix monotone transform and direction handling") {
    ResultsTable t;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 30; ++i) {
        const double x = u(rng);
        t.add({"d", std::to_string(i), "m", "F", x});
        t.add({"d", std::to_string(i), "m", "F2", 2 * x});
        t.add({"d", std::to_string(i), "m", "S", 100 - 10 * x});
    }
    const auto tm = tau_matrix(t, TauMode::combined);
    REQUIRE(tm.metrics == std::vector<std::string>{"F", "F2", "S"});
    CHECK(tm.tau(0, 1) == doctest::Approx(1.0));
    CHECK(tm.tau(0, 2) == doctest::Approx(1.0));  // S is lower-better, so it agrees with F
}

TEST_CASE("single-metric table yields [1]") {
    ResultsTable t;
    t.add({"d", "0", "m", "F", 0.5});
    const auto tm = tau_matrix(t, TauMode::combined);
    CHECK(tm.tau.rows() == 1);
    CHECK(tm.tau(0, 0) == 1.0);
}

TEST_CASE("results table rejects duplicates and reports missing cells") {
    ResultsTable t;
    t.add({"d", "0", "m", "F", 0.5});
    CHECK_THROWS(t.add({"d", "0", "m", "F", 0.7}));
    t.add({"d", "1", "m", "P", 0.5});
    CHECK_THROWS_AS(t.column("F"), MissingCell);
    CHECK(t.direction("S") == Direction::lower_better);
    CHECK(t.direction("F") == Direction::higher_better);
}

TEST_CASE("average_ranks examples") {
    ResultsTable dominant;
    for (std::string ds : {"a", "b", "c"}) {
        dominant.add({ds, "0", "best", "F", 0.9});
        dominant.add({ds, "0", "worst", "F", 0.1});
    }
    auto r = average_ranks(dominant, "F");
    CHECK(r[0].method == "best");
    CHECK(r[0].average_rank == 1.0);
    CHECK(r[1].average_rank == 2.0);

    ResultsTable split;
    split.add({"a", "0", "x", "F", 0.9});
    split.add({"a", "0", "y", "F", 0.1});
    split.add({"b", "0", "x", "F", 0.1});
    split.add({"b", "0", "y", "F", 0.9});
    r = average_ranks(split, "F");
    CHECK(r[0].average_rank == 1.5);
    CHECK(r[1].average_rank == 1.5);

    // Per-dataset ranks (1,2,3) and (2,1,3); values averaged over two series each.
    ResultsTable three;
    const std::map<std::string, std::vector<double>> d1{{"p", {0.9, 0.7}}, {"q", {0.5, 0.5}}, {"r", {0.1, 0.2}}};
    const std::map<std::string, std::vector<double>> d2{{"p", {0.5, 0.6}}, {"q", {0.8, 0.8}}, {"r", {0.0, 0.1}}};
    for (const auto& [m, v] : d1)
        for (std::size_t i = 0; i < v.size(); ++i) three.add({"d1", std::to_string(i), m, "F", v[i]});
    for (const auto& [m, v] : d2)
        for (std::size_t i = 0; i < v.size(); ++i) three.add({"d2", std::to_string(i), m, "F", v[i]});
    r = average_ranks(three, "F");
    CHECK(r[0].average_rank == 1.5);
    CHECK(r[1].average_rank == 1.5);
    CHECK(r[2].average_rank == 3.0);
}

TEST_CASE("average_ranks with ties, lower-better metrics and missing cells") {
    ResultsTable t;
    t.add({"a", "0", "x", "S", 3});
    t.add({"a", "0", "y", "S", 3});
    t.add({"a", "0", "z", "S", 1});
    const auto r = average_ranks(t, "S");
    CHECK(r[2].average_rank == 1.0);
    CHECK(r[0].average_rank == 2.5);
    CHECK(r[0].average_rank + r[1].average_rank + r[2].average_rank == 6.0);

    t.add({"b", "0", "x", "S", 3});
    CHECK_THROWS_AS(average_ranks(t, "S"), MissingCell);
}
