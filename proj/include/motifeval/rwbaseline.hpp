#pragma once

// Random-walk benchmark series and the stationarity-based solver that shows such
// benchmarks are trivially solvable: a random walk's first difference is white noise.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "motifeval/benchgen.hpp"
#include "motifeval/core.hpp"

namespace motifeval {

struct RwBenchmarkSeries {
    TimeSeries series;
    MotifSetCollection inserted{CollectionKind::ground_truth};  // one set holding every insertion
    std::vector<std::string> inserted_labels;                   // class label per insertion, in time order
    std::uint64_t seed = 0;

    /// Insertions grouped into one GT set per class.
    MotifSetCollection per_class_ground_truth() const;
};

struct RwOptions {
    std::size_t min_insertions = 2;
    std::size_t max_insertions = 8;
    Index length = 10000;  // total series length including insertions
    Index min_gap = 1;     // random-walk samples kept between consecutive insertions
};

/// Gaussian random walk (unit-variance steps) with z-normalized pool instances spliced
/// at uniformly random, non-overlapping positions. Each instance is shifted to start at
/// the walk's current level and the walk resumes from the instance's last value.
/// Throws InsufficientSpace when the insertions cannot fit.
RwBenchmarkSeries generate_rw_series(const InstanceDataset& pool, std::uint64_t seed, const RwOptions& options = {});

struct DfTestResult {
    double statistic = 0.0;
    double critical_value = 0.0;
    double alpha = 0.05;
    bool reject_h0 = false;
};

/// Asymptotic Dickey-Fuller critical value, constant-only case.
/// Tabulated for alpha in {0.01, 0.025, 0.05, 0.10}; other values throw.
double df_critical_value(double alpha);

/// Dickey-Fuller unit-root test with intercept: regresses dy_t on (1, y_{t-1}) and
/// returns the t-ratio of the lag coefficient. Needs at least 10 values;
/// throws DegenerateWindow when the values or residuals leave the ratio undefined.
DfTestResult dickey_fuller(std::span<const double> values, double alpha = 0.05);

struct RwSolverOptions {
    Index window = 0;
    double alpha = 0.05;
    std::optional<Index> stride;    // default max(1, window / 4)
    std::optional<Index> min_len;   // default window / 2
};

/// Marks samples covered only by windows whose first difference tests stationary as
/// random walk and returns the remaining maximal runs as one discovered motif set.
MotifSetCollection rw_solver(const TimeSeries& series, const RwSolverOptions& options);

/// Per-sample random-walk flags before run extraction (exposed for testing).
std::vector<bool> rw_mask(const TimeSeries& series, const RwSolverOptions& options);

}  // namespace motifeval
