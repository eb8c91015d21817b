#include "motifeval/matching.hpp"

#include <algorithm>
#include <tuple>

namespace motifeval {

OverlapRate overlap_rate(const Segment& a, const Segment& b) noexcept {
    const Index lo = std::max(a.start(), b.start());
    const Index hi = std::min(a.end(), b.end());
    const Index inter = hi >= lo ? hi - lo + 1 : 0;
    return {inter, a.length() + b.length() - inter};
}

std::vector<MotifMatch> match_motifs(const MotifSetCollection& gt, const MotifSetCollection& disc,
                                     const EvalConfig& cfg) {
    cfg.validate();
    require_valid_ground_truth(gt);

    std::vector<MotifMatch> matches;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        for (std::size_t j = 0; j < gt[i].size(); ++j) {
            const Segment& beta = gt[i][j];
            bool found = false;
            MotifMatch best{{i, j}, {}, {}};
            for (std::size_t s = 0; s < disc.size(); ++s) {
                for (std::size_t k = 0; k < disc[s].size(); ++k) {
                    const Segment& alpha = disc[s][k];
                    if (alpha.end() < beta.start() || alpha.start() > beta.end()) continue;
                    const auto rate = overlap_rate(alpha, beta);
                    if (!found || rate > best.rate ||
                        (rate == best.rate && std::tuple(s, alpha.start(), k) <
                                                  std::tuple(best.disc.set, disc[best.disc.set][best.disc.motif].start(),
                                                             best.disc.motif))) {
                        found = true;
                        best.disc = {s, k};
                        best.rate = rate;
                    }
                }
            }
            if (found && best.rate.exceeds(cfg.or_threshold)) matches.push_back(best);
        }
    }
    return matches;
}

Eigen::MatrixXi build_contingency(const MotifSetCollection& gt, const MotifSetCollection& disc,
                                  const std::vector<MotifMatch>& matches) {
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(gt.size()),
                                              static_cast<Eigen::Index>(disc.size()));
    for (const auto& mm : matches)
        ++m(static_cast<Eigen::Index>(mm.gt.set), static_cast<Eigen::Index>(mm.disc.set));
    return m;
}

Assignment optimal_set_assignment(const Eigen::MatrixXi& contingency) {
    if ((contingency.array() < 0).any()) throw std::invalid_argument("contingency table has negative entries");
    const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> wide = contingency.cast<std::int64_t>();
    return lexmin_max_profit_assignment(wide);
}

int MatchingMatrix::partner_of_gt(std::size_t gt_set) const {
    for (std::size_t i = 0; i < pairs; ++i)
        if (gt_order[i] == static_cast<int>(gt_set)) return disc_order[i];
    return -1;
}

MatchingMatrix build_matching_matrix(const MotifSetCollection& gt, const MotifSetCollection& disc,
                                     const EvalConfig& cfg) {
    MatchingMatrix out;
    out.motif_matches = match_motifs(gt, disc, cfg);
    out.contingency = build_contingency(gt, disc, out.motif_matches);
    const auto assignment = optimal_set_assignment(out.contingency);

    const int g = static_cast<int>(gt.size());
    const int d = static_cast<int>(disc.size());
    std::vector<char> disc_used(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < g; ++i) {
        const int c = assignment.row_to_col[static_cast<std::size_t>(i)];
        if (c < 0) continue;
        out.gt_order.push_back(i);
        out.disc_order.push_back(c);
        disc_used[static_cast<std::size_t>(c)] = 1;
    }
    out.pairs = out.gt_order.size();
    for (int i = 0; i < g; ++i)
        if (assignment.row_to_col[static_cast<std::size_t>(i)] < 0) out.gt_order.push_back(i);
    for (int j = 0; j < d; ++j)
        if (!disc_used[static_cast<std::size_t>(j)]) out.disc_order.push_back(j);

    out.m_star = Eigen::MatrixXi::Zero(g + 1, d + 1);
    for (int r = 0; r < g; ++r) {
        const int gi = out.gt_order[static_cast<std::size_t>(r)];
        int matched = 0;
        for (int c = 0; c < d; ++c) {
            const int v = out.contingency(gi, out.disc_order[static_cast<std::size_t>(c)]);
            out.m_star(r, c) = v;
            matched += v;
        }
        out.m_star(r, d) = static_cast<int>(gt[static_cast<std::size_t>(gi)].size()) - matched;
    }
    for (int c = 0; c < d; ++c) {
        const int dj = out.disc_order[static_cast<std::size_t>(c)];
        out.m_star(g, c) = static_cast<int>(disc[static_cast<std::size_t>(dj)].size()) - out.contingency.col(dj).sum();
    }
    return out;
}

}  // namespace motifeval
