#pragma once

#include <vector>

#include "motifeval/matching.hpp"

namespace motifeval {

struct PrfScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Totals plus per-set breakdown. Per-set vectors are indexed in matching-matrix order
/// (see MatchingMatrix::gt_order / disc_order).
struct ConfusionCounts {
    long tp = 0;
    long fn = 0;
    long fp = 0;
    std::vector<long> tp_per_gt;
    std::vector<long> fn_per_gt;
    std::vector<long> fp_per_disc;
};

ConfusionCounts count_confusion(const MatchingMatrix& mm, const EvalConfig& cfg = {});

/// P = TP/(TP+FP), R = TP/(TP+FN), F = harmonic mean; each is 0 when its numerator is 0.
PrfScores micro_prf(long tp, long fn, long fp);

struct MacroBreakdown {
    PrfScores totals;
    std::vector<double> per_set_precision;  // one per discovered set, matching-matrix order
    std::vector<double> per_set_recall;     // one per GT set, matching-matrix order
    std::vector<double> per_set_f1;         // one per matched set pair; unmatched sets count as 0
};

MacroBreakdown macro_prf(const MatchingMatrix& mm, const EvalConfig& cfg = {});

struct EvalReport {
    long tp = 0;
    long fn = 0;
    long fp = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<double> per_set_precision;
    std::vector<double> per_set_recall;
    std::vector<double> per_set_f1;
    EvalConfig config;
    MatchingMatrix matching;
};

/// Matching, counting and averaging in one call.
/// Throws EmptyGroundTruth when gt has no sets and GroundTruthOverlap when its segments intersect.
EvalReport evaluate(const MotifSetCollection& gt, const MotifSetCollection& disc, const EvalConfig& cfg = {});

}  // namespace motifeval
