#pragma once

// Pre-existing TSMD metrics kept for comparison with PROM: correctness (C_m, C_g)
// and the two-level start-offset score (S, lower is better).

#include "motifeval/assignment.hpp"
#include "motifeval/core.hpp"

namespace motifeval {

enum class CorrectnessVariant { m, g };

struct CorrectnessResult {
    double value = 0.0;
    CorrectnessVariant variant = CorrectnessVariant::m;
    Assignment assignment;  // GT set -> discovered set
};

/// Per-pair correctness contributions: entry (i, j) sums OR(alpha, beta) > 0.5 over
/// beta in gt[i], alpha in disc[j], divided by |gt[i]|.
Eigen::MatrixXd correctness_contributions(const MotifSetCollection& gt, const MotifSetCollection& disc);

/// Averages the contributions of the set pairing that maximizes the total, over
/// min(g, d) pairs (variant m) or over all g GT sets (variant g).
CorrectnessResult correctness(const MotifSetCollection& gt, const MotifSetCollection& disc,
                              CorrectnessVariant variant = CorrectnessVariant::m);

struct ScoreResult {
    double value = 0.0;
    bool penalize_unmatched_disc = false;
    Assignment assignment;  // GT set -> discovered set, -1 when left unpaired
};

/// Cheapest pairing of two motif lists: each pair costs |start difference|, each
/// motif left unpaired costs its length (discovered leftovers only when `charge_disc`).
Index score_motif_pairing(const MotifSet& gt, const MotifSet& disc, bool charge_disc = true);

/// Minimum over two-level matchings. Unpaired GT sets cost their total motif length;
/// unpaired discovered sets cost theirs only when `penalize_unmatched_disc`.
ScoreResult score(const MotifSetCollection& gt, const MotifSetCollection& disc, bool penalize_unmatched_disc = false);

}  // namespace motifeval
