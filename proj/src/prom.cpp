#include "motifeval/prom.hpp"

#include <numeric>

namespace motifeval {

namespace {

double ratio(long num, long den) { return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

ConfusionCounts count_confusion(const MatchingMatrix& mm, const EvalConfig& cfg) {
    const auto g = mm.g();
    const auto d = mm.d();
    const auto m = static_cast<Eigen::Index>(mm.pairs);
    ConfusionCounts c;

    for (Eigen::Index i = 0; i < g; ++i) {
        const long row = mm.m_star.row(i).sum();
        const long diag = i < m ? mm.m_star(i, i) : 0;
        c.tp_per_gt.push_back(diag);
        c.fn_per_gt.push_back(row - diag);
        c.tp += diag;
        c.fn += row - diag;
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        const long col = mm.m_star.col(j).sum();
        long fp = 0;
        if (j < m)
            fp = col - mm.m_star(j, j);
        else if (cfg.penalize_off_target)
            fp = col;
        c.fp_per_disc.push_back(fp);
        c.fp += fp;
    }
    return c;
}

PrfScores micro_prf(long tp, long fn, long fp) {
    PrfScores s;
    if (tp <= 0) return s;
    s.precision = ratio(tp, tp + fp);
    s.recall = ratio(tp, tp + fn);
    s.f1 = harmonic(s.precision, s.recall);
    return s;
}

MacroBreakdown macro_prf(const MatchingMatrix& mm, const EvalConfig& cfg) {
    const auto counts = count_confusion(mm, cfg);
    const auto g = static_cast<std::size_t>(mm.g());
    const auto d = static_cast<std::size_t>(mm.d());
    const std::size_t m = mm.pairs;

    MacroBreakdown out;
    for (std::size_t i = 0; i < g; ++i)
        out.per_set_recall.push_back(ratio(counts.tp_per_gt[i], counts.tp_per_gt[i] + counts.fn_per_gt[i]));
    for (std::size_t j = 0; j < d; ++j)
        out.per_set_precision.push_back(j < m ? ratio(counts.tp_per_gt[j], counts.tp_per_gt[j] + counts.fp_per_disc[j])
                                              : 0.0);
    for (std::size_t k = 0; k < m; ++k) out.per_set_f1.push_back(harmonic(out.per_set_precision[k], out.per_set_recall[k]));

    const double recall_sum = std::accumulate(out.per_set_recall.begin(), out.per_set_recall.end(), 0.0);
    const double precision_sum = std::accumulate(out.per_set_precision.begin(), out.per_set_precision.end(), 0.0);
    const double f1_sum = std::accumulate(out.per_set_f1.begin(), out.per_set_f1.end(), 0.0);

    const std::size_t precision_den = cfg.penalize_off_target ? d : m;
    std::size_t f1_den = g;
    if (d > g) f1_den = cfg.penalize_off_target ? d : m;

    out.totals.recall = g > 0 ? recall_sum / static_cast<double>(g) : 0.0;
    out.totals.precision = precision_den > 0 ? precision_sum / static_cast<double>(precision_den) : 0.0;
    out.totals.f1 = f1_den > 0 ? f1_sum / static_cast<double>(f1_den) : 0.0;
    return out;
}

EvalReport evaluate(const MotifSetCollection& gt, const MotifSetCollection& disc, const EvalConfig& cfg) {
    if (gt.empty()) throw EmptyGroundTruth();
    EvalReport r;
    r.config = cfg;
    r.matching = build_matching_matrix(gt, disc, cfg);
    const auto counts = count_confusion(r.matching, cfg);
    r.tp = counts.tp;
    r.fn = counts.fn;
    r.fp = counts.fp;

    auto macro = macro_prf(r.matching, cfg);
    r.per_set_precision = std::move(macro.per_set_precision);
    r.per_set_recall = std::move(macro.per_set_recall);
    r.per_set_f1 = std::move(macro.per_set_f1);

    const PrfScores s = cfg.averaging == Averaging::micro ? micro_prf(r.tp, r.fn, r.fp) : macro.totals;
    r.precision = s.precision;
    r.recall = s.recall;
    r.f1 = s.f1;
    return r;
}

}  // namespace motifeval
