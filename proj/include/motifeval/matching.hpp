#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "motifeval/assignment.hpp"
#include "motifeval/core.hpp"

namespace motifeval {

/// Overlap rate |a ∩ b| / |a ∪ b| kept as an exact integer ratio.
struct OverlapRate {
    Index intersection = 0;
    Index union_size = 1;

    double value() const noexcept { return static_cast<double>(intersection) / static_cast<double>(union_size); }

    /// Strict `value() > threshold`. Exact for thresholds that are dyadic rationals (0.5, 0.75, ...).
    bool exceeds(double threshold) const noexcept {
        return static_cast<long double>(intersection) > static_cast<long double>(threshold) * union_size;
    }

    friend bool operator==(const OverlapRate& a, const OverlapRate& b) noexcept {
        return static_cast<__int128>(a.intersection) * b.union_size ==
               static_cast<__int128>(b.intersection) * a.union_size;
    }
    friend bool operator<(const OverlapRate& a, const OverlapRate& b) noexcept {
        return static_cast<__int128>(a.intersection) * b.union_size <
               static_cast<__int128>(b.intersection) * a.union_size;
    }
    friend bool operator>(const OverlapRate& a, const OverlapRate& b) noexcept { return b < a; }
};

OverlapRate overlap_rate(const Segment& a, const Segment& b) noexcept;

/// One ground-truth motif paired with one discovered motif.
struct MotifMatch {
    MotifRef gt;
    MotifRef disc;
    OverlapRate rate;
};

/// For every ground-truth motif, pairs it with its best-overlapping discovered motif
/// when that overlap exceeds cfg.or_threshold. Ties go to the smaller
/// (set index, motif start, motif index). Throws GroundTruthOverlap for invalid `gt`.
std::vector<MotifMatch> match_motifs(const MotifSetCollection& gt, const MotifSetCollection& disc,
                                     const EvalConfig& cfg = {});

/// g x d table counting motif-level matches between set pairs.
Eigen::MatrixXi build_contingency(const MotifSetCollection& gt, const MotifSetCollection& disc,
                                  const std::vector<MotifMatch>& matches);

/// Column permutation maximizing the diagonal of `contingency`.
/// Returns an Assignment over GT rows; exactly min(g, d) rows receive a column.
Assignment optimal_set_assignment(const Eigen::MatrixXi& contingency);

/// Contingency table after optimal set pairing, extended with the unmatched column and row.
///
/// Rows of `m_star` follow `gt_order` and columns follow `disc_order`: the first
/// `pairs` entries of each are the matched set pairs (row i pairs with column i),
/// the remainder are unmatched sets in ascending index. When g <= d every GT set
/// is paired and `gt_order` is the identity.
struct MatchingMatrix {
    Eigen::MatrixXi m_star;
    Eigen::MatrixXi contingency;
    std::vector<int> gt_order;
    std::vector<int> disc_order;
    std::size_t pairs = 0;
    std::vector<MotifMatch> motif_matches;

    Eigen::Index g() const noexcept { return m_star.rows() - 1; }
    Eigen::Index d() const noexcept { return m_star.cols() - 1; }

    /// Discovered set paired with GT set `gt_set`, or -1.
    int partner_of_gt(std::size_t gt_set) const;
};

MatchingMatrix build_matching_matrix(const MotifSetCollection& gt, const MotifSetCollection& disc,
                                     const EvalConfig& cfg = {});

}  // namespace motifeval
