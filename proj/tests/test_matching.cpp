#include "doctest.h"

#include <random>

#include "motifeval/matching.hpp"
#include "oracles.hpp"

using namespace motifeval;

namespace {

MotifSetCollection make(CollectionKind kind, std::vector<std::vector<Segment>> sets) {
    std::vector<MotifSet> out;
    for (auto& s : sets) out.emplace_back(std::move(s));
    return MotifSetCollection(kind, std::move(out));
}
MotifSetCollection gt_of(std::vector<std::vector<Segment>> sets) { return make(CollectionKind::ground_truth, std::move(sets)); }
MotifSetCollection disc_of(std::vector<std::vector<Segment>> sets) { return make(CollectionKind::discovered, std::move(sets)); }

Eigen::MatrixXi mat(std::initializer_list<std::initializer_list<int>> rows) {
    Eigen::MatrixXi m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto r : rows) {
        Eigen::Index j = 0;
        for (int v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("overlap_rate examples") {
    CHECK(overlap_rate({1, 10}, {1, 10}).value() == 1.0);
    CHECK(overlap_rate({1, 10}, {20, 29}).value() == 0.0);
    // Index enumeration: shared 6..10 (5), covered 1..15 (15).
    const auto r = overlap_rate({1, 10}, {6, 15});
    CHECK(r.intersection == 5);
    CHECK(r.union_size == 15);
    CHECK(r.value() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("overlap_rate matches index enumeration and is symmetric") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Index> pos(0, 60), len(1, 25);
    for (int i = 0; i < 2000; ++i) {
        const Index a0 = pos(rng), b0 = pos(rng);
        const Segment a(a0, a0 + len(rng) - 1), b(b0, b0 + len(rng) - 1);
        const auto [inter, uni] = oracle::overlap_counts(a, b);
        const auto r = overlap_rate(a, b);
        CHECK(r.intersection == inter);
        CHECK(r.union_size == uni);
        CHECK(overlap_rate(b, a) == r);
        CHECK((r.value() == 1.0) == (a == b));
    }
}

TEST_CASE("threshold comparison is strict and exact at the boundary") {
    // [0:2] vs [1:3]: 2 shared of 4 covered = exactly 0.5, not matchable.
    CHECK_FALSE(overlap_rate({0, 2}, {1, 3}).exceeds(0.5));
    CHECK(overlap_rate({0, 3}, {1, 3}).exceeds(0.5));
    CHECK_FALSE(overlap_rate({0, 3}, {1, 3}).exceeds(0.75));
}

TEST_CASE("match_motifs examples") {
    const auto one = match_motifs(gt_of({{{1, 10}}}), disc_of({{{2, 11}}}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].rate.value() == doctest::Approx(9.0 / 11.0));

    CHECK(match_motifs(gt_of({{{1, 10}}}), disc_of({{{6, 15}}})).empty());
    CHECK(match_motifs(gt_of({{{1, 10}}}), MotifSetCollection::discovered({})).empty());

    CHECK_THROWS_AS(match_motifs(gt_of({{{1, 10}}, {{5, 12}}}), disc_of({{{1, 10}}})), GroundTruthOverlap);
}

TEST_CASE("match_motifs tie-break prefers the smaller set index, then start") {
    // Both discovered segments overlap [10:19] by 9/11.
    const auto gt = gt_of({{{10, 19}}});
    auto m = match_motifs(gt, disc_of({{{11, 20}}, {{9, 18}}}));
    REQUIRE(m.size() == 1);
    CHECK(m[0].disc == MotifRef{0, 0});

    m = match_motifs(gt, disc_of({{{11, 20}, {9, 18}}}));
    REQUIRE(m.size() == 1);
    CHECK(m[0].disc == MotifRef{0, 1});
}

TEST_CASE("build_contingency examples") {
    const auto gt = gt_of({{{0, 9}, {20, 29}}, {{40, 49}}});
    const auto disc = disc_of({{{0, 9}, {20, 29}}, {{40, 49}}});
    const auto matches = match_motifs(gt, disc);
    CHECK(build_contingency(gt, disc, matches) == mat({{2, 0}, {0, 1}}));
    CHECK(build_contingency(gt, disc, {}) == Eigen::MatrixXi::Zero(2, 2));

    const auto gt1 = gt_of({{{0, 9}, {20, 29}}});
    const auto disc2 = disc_of({{{0, 9}}, {{20, 29}}});
    CHECK(build_contingency(gt1, disc2, match_motifs(gt1, disc2)) == mat({{1, 1}}));
}

TEST_CASE("optimal_set_assignment examples") {
    auto a = optimal_set_assignment(mat({{2, 0}, {0, 1}}));
    CHECK(a.row_to_col == std::vector<int>{0, 1});

    a = optimal_set_assignment(mat({{0, 5}, {5, 0}}));
    CHECK(a.row_to_col == std::vector<int>{1, 0});
    CHECK(assignment_value(mat({{0, 5}, {5, 0}}), a) == 10);

    a = optimal_set_assignment(mat({{1, 9, 4}}));
    CHECK(a.row_to_col == std::vector<int>{1});

    // Column-heavy and row-heavy shapes keep exactly min(g, d) pairs.
    CHECK(optimal_set_assignment(mat({{0, 0, 0}})).pairs() == 1);
    CHECK(optimal_set_assignment(mat({{3}, {4}, {1}})).row_to_col == std::vector<int>{-1, 0, -1});
}

TEST_CASE("optimal_set_assignment ties resolve to the lexicographically smallest map") {
    CHECK(optimal_set_assignment(mat({{1, 1}, {1, 1}})).row_to_col == std::vector<int>{0, 1});
    CHECK(optimal_set_assignment(Eigen::MatrixXi::Zero(3, 3)).row_to_col == std::vector<int>{0, 1, 2});
}

TEST_CASE("optimal_set_assignment equals exhaustive enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = std::uniform_int_distribution<int>(1, 6)(rng);
        const auto d = std::uniform_int_distribution<int>(1, 6)(rng);
        const int hi = std::uniform_int_distribution<int>(0, 1)(rng) ? 3 : 20;  // small range forces ties
        Eigen::MatrixXi m(g, d);
        std::vector<std::vector<long>> v(static_cast<std::size_t>(g), std::vector<long>(static_cast<std::size_t>(d)));
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j) =
                                            std::uniform_int_distribution<int>(0, hi)(rng);
        const auto [best, lex] = oracle::exhaustive_assignment(v, static_cast<std::size_t>(g), static_cast<std::size_t>(d));
        const auto a = optimal_set_assignment(m);
        CHECK(assignment_value(m, a) == best);
        CHECK(a.row_to_col == lex);
    }
}

TEST_CASE("build_matching_matrix worked example") {
    const auto gt = gt_of({{{1, 10}, {21, 30}}, {{41, 50}}});
    const auto disc = disc_of({{{2, 11}, {22, 31}, {60, 69}}, {{42, 51}}});
    const auto mm = build_matching_matrix(gt, disc);
    CHECK(mm.disc_order == std::vector<int>{0, 1});
    CHECK(mm.pairs == 2);
    CHECK(mm.m_star.topLeftCorner(2, 2) == mat({{2, 0}, {0, 1}}));
    CHECK(mm.m_star(0, 2) == 0);
    CHECK(mm.m_star(1, 2) == 0);
    CHECK(mm.m_star(2, 0) == 1);
    CHECK(mm.m_star(2, 1) == 0);
}

TEST_CASE("build_matching_matrix perfect reproduction and shapes") {
    const auto gt = gt_of({{{0, 9}, {30, 39}}, {{50, 59}, {70, 79}, {90, 99}}});
    const auto mm = build_matching_matrix(gt, gt.as(CollectionKind::discovered));
    CHECK(mm.m_star(0, 0) == 2);
    CHECK(mm.m_star(1, 1) == 3);
    CHECK(mm.m_star.col(2).head(2).isZero());
    CHECK(mm.m_star.row(2).head(2).isZero());

    const auto shape = build_matching_matrix(gt_of({{{0, 9}}}), disc_of({{{0, 9}}, {{20, 29}}, {{40, 49}}}));
    CHECK(shape.m_star.rows() == 2);
    CHECK(shape.m_star.cols() == 4);
}

TEST_CASE("unmatched GT sets are ordered after matched ones when g > d") {
    const auto gt = gt_of({{{0, 9}}, {{20, 29}}, {{40, 49}}});
    const auto mm = build_matching_matrix(gt, disc_of({{{20, 29}}}));
    CHECK(mm.pairs == 1);
    CHECK(mm.gt_order == std::vector<int>{1, 0, 2});
    CHECK(mm.partner_of_gt(1) == 0);
    CHECK(mm.partner_of_gt(0) == -1);
    CHECK(mm.m_star(0, 0) == 1);
}

TEST_CASE("matching properties on random instances") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const auto g = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        const auto d = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        const auto gt = oracle::random_ground_truth(rng, g, 5, 200);
        const auto disc = oracle::random_discovered(rng, gt, d, 5, 200);

        // No discovered segment is matchable with two GT segments.
        for (const auto& ds : disc.sets())
            for (const auto& alpha : ds.motifs()) {
                int partners = 0;
                for (const auto& gs : gt.sets())
                    for (const auto& beta : gs.motifs()) partners += overlap_rate(alpha, beta).exceeds(0.5);
                CHECK(partners <= 1);
            }

        const auto mm = build_matching_matrix(gt, disc);
        for (Eigen::Index r = 0; r < mm.g(); ++r)
            CHECK(mm.m_star.row(r).sum() == static_cast<int>(gt[static_cast<std::size_t>(mm.gt_order[static_cast<std::size_t>(r)])].size()));
        for (Eigen::Index c = 0; c < mm.d(); ++c)
            CHECK(mm.m_star.col(c).sum() == static_cast<int>(disc[static_cast<std::size_t>(mm.disc_order[static_cast<std::size_t>(c)])].size()));
        CHECK((mm.m_star.array() >= 0).all());

        // Raising the threshold never adds matches.
        EvalConfig strict;
        strict.or_threshold = 0.8;
        CHECK(match_motifs(gt, disc, strict).size() <= mm.motif_matches.size());
    }
}
