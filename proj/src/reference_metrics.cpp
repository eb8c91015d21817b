#include "motifeval/reference_metrics.hpp"

#include <algorithm>
#include <cstdlib>

#include "motifeval/matching.hpp"

namespace motifeval {

namespace {

using CostMatrix = DenseMatrix<std::int64_t>;

// Min-cost partial pairing between `a` row items and `b` column items, where item
// costs for staying unpaired are given. Solved as a square (a+b) assignment.
std::int64_t partial_pairing(const CostMatrix& pair_cost, const std::vector<std::int64_t>& row_alone,
                             const std::vector<std::int64_t>& col_alone, std::vector<int>* row_to_col = nullptr) {
    const auto a = pair_cost.rows();
    const auto b = pair_cost.cols();
    std::int64_t big = 1;
    if (pair_cost.size() > 0) big += pair_cost.sum();
    for (auto v : row_alone) big += v;
    for (auto v : col_alone) big += v;

    CostMatrix cost = CostMatrix::Constant(a + b, a + b, big);
    cost.topLeftCorner(a, b) = pair_cost;
    for (Eigen::Index i = 0; i < a; ++i) cost(i, b + i) = row_alone[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < b; ++j) cost(a + j, j) = col_alone[static_cast<std::size_t>(j)];
    cost.bottomRightCorner(b, a).setZero();

    const auto sol = solve_min_cost(cost);
    std::int64_t total = 0;
    for (std::size_t r = 0; r < sol.size(); ++r) total += cost(static_cast<Eigen::Index>(r), sol[r]);
    if (row_to_col) {
        row_to_col->assign(static_cast<std::size_t>(a), -1);
        for (Eigen::Index i = 0; i < a; ++i)
            if (sol[static_cast<std::size_t>(i)] < b) (*row_to_col)[static_cast<std::size_t>(i)] = sol[static_cast<std::size_t>(i)];
    }
    return total;
}

std::int64_t total_length(const MotifSet& s) {
    std::int64_t n = 0;
    for (const auto& seg : s.motifs()) n += seg.length();
    return n;
}

}  // namespace

Eigen::MatrixXd correctness_contributions(const MotifSetCollection& gt, const MotifSetCollection& disc) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(gt.size()), static_cast<Eigen::Index>(disc.size()));
    for (std::size_t i = 0; i < gt.size(); ++i) {
        for (std::size_t j = 0; j < disc.size(); ++j) {
            double sum = 0.0;
            for (const auto& beta : gt[i].motifs())
                for (const auto& alpha : disc[j].motifs()) {
                    const auto rate = overlap_rate(alpha, beta);
                    if (rate.exceeds(0.5)) sum += rate.value();
                }
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum / static_cast<double>(gt[i].size());
        }
    }
    return c;
}

CorrectnessResult correctness(const MotifSetCollection& gt, const MotifSetCollection& disc, CorrectnessVariant variant) {
    if (gt.empty()) throw EmptyGroundTruth();
    require_valid_ground_truth(gt);

    CorrectnessResult r;
    r.variant = variant;
    const auto contributions = correctness_contributions(gt, disc);
    r.assignment = max_profit_assignment(contributions);
    const double total = assignment_value(contributions, r.assignment);
    const std::size_t m = std::min(gt.size(), disc.size());
    const std::size_t den = variant == CorrectnessVariant::m ? m : gt.size();
    r.value = den > 0 ? total / static_cast<double>(den) : 0.0;
    return r;
}

Index score_motif_pairing(const MotifSet& gt, const MotifSet& disc, bool charge_disc) {
    CostMatrix pair(static_cast<Eigen::Index>(gt.size()), static_cast<Eigen::Index>(disc.size()));
    for (std::size_t i = 0; i < gt.size(); ++i)
        for (std::size_t j = 0; j < disc.size(); ++j)
            pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::llabs(gt[i].start() - disc[j].start());
    std::vector<std::int64_t> gt_alone, disc_alone;
    for (const auto& s : gt.motifs()) gt_alone.push_back(s.length());
    for (const auto& s : disc.motifs()) disc_alone.push_back(charge_disc ? s.length() : 0);
    return partial_pairing(pair, gt_alone, disc_alone);
}

ScoreResult score(const MotifSetCollection& gt, const MotifSetCollection& disc, bool penalize_unmatched_disc) {
    if (gt.empty()) throw EmptyGroundTruth();
    require_valid_ground_truth(gt);

    // Inner optima are independent across set pairs, so the outer level is an
    // assignment over per-pair inner costs.
    CostMatrix pair(static_cast<Eigen::Index>(gt.size()), static_cast<Eigen::Index>(disc.size()));
    for (std::size_t i = 0; i < gt.size(); ++i)
        for (std::size_t j = 0; j < disc.size(); ++j)
            pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = score_motif_pairing(gt[i], disc[j]);

    std::vector<std::int64_t> gt_alone, disc_alone;
    for (const auto& s : gt.sets()) gt_alone.push_back(total_length(s));
    for (const auto& s : disc.sets()) disc_alone.push_back(penalize_unmatched_disc ? total_length(s) : 0);

    ScoreResult r;
    r.penalize_unmatched_disc = penalize_unmatched_disc;
    r.value = static_cast<double>(partial_pairing(pair, gt_alone, disc_alone, &r.assignment.row_to_col));
    return r;
}

}  // namespace motifeval
