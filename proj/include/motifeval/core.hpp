#pragma once

// Domain types shared by the evaluation, generation and analysis modules.
// Indices are 0-based and segment endpoints are inclusive.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "motifeval/errors.hpp"

namespace motifeval {

using Index = std::int64_t;

/// A multivariate series stored as an n x D row-major matrix (one row per sample).
template <typename Scalar>
class BasicTimeSeries {
public:
    using scalar_type = Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    BasicTimeSeries() = default;

    explicit BasicTimeSeries(Matrix values) : values_(std::move(values)) { check(); }

    /// Univariate convenience constructor.
    static BasicTimeSeries univariate(const std::vector<Scalar>& samples) {
        Matrix m(static_cast<Eigen::Index>(samples.size()), 1);
        for (std::size_t i = 0; i < samples.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = samples[i];
        return BasicTimeSeries(std::move(m));
    }

    Index length() const noexcept { return values_.rows(); }
    Index dimensions() const noexcept { return values_.cols(); }
    bool empty() const noexcept { return values_.size() == 0; }

    const Matrix& values() const noexcept { return values_; }

    /// Column `d` as a vector (univariate access for d = 0).
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> channel(Index d = 0) const { return values_.col(d); }

    friend bool operator==(const BasicTimeSeries& a, const BasicTimeSeries& b) {
        return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
               a.values_ == b.values_;
    }

private:
    void check() const {
        if (values_.rows() < 1 || values_.cols() < 1)
            throw std::invalid_argument("time series needs at least one sample and one dimension");
        if (!values_.allFinite()) throw std::invalid_argument("time series contains non-finite values");
    }

    Matrix values_;
};

using TimeSeries = BasicTimeSeries<double>;

/// Inclusive interval [start, end] on a series' time axis.
class Segment {
public:
    constexpr Segment() = default;
    Segment(Index start, Index end) : start_(start), end_(end) {
        if (start < 0 || end < start)
            throw std::invalid_argument("invalid segment [" + std::to_string(start) + ":" +
                                        std::to_string(end) + "]");
    }

    constexpr Index start() const noexcept { return start_; }
    constexpr Index end() const noexcept { return end_; }
    constexpr Index length() const noexcept { return end_ - start_ + 1; }

    Segment shifted(Index offset) const { return {start_ + offset, end_ + offset}; }

    friend constexpr bool operator==(const Segment&, const Segment&) = default;
    friend constexpr auto operator<=>(const Segment&, const Segment&) = default;

private:
    Index start_ = 0;
    Index end_ = 0;
};

class MotifSet {
public:
    MotifSet(std::vector<Segment> motifs, std::optional<std::string> label = std::nullopt)
        : label_(std::move(label)), motifs_(std::move(motifs)) {
        if (motifs_.empty()) throw std::invalid_argument("motif set must contain at least one motif");
    }

    const std::optional<std::string>& label() const noexcept { return label_; }
    const std::vector<Segment>& motifs() const noexcept { return motifs_; }
    std::size_t size() const noexcept { return motifs_.size(); }
    const Segment& operator[](std::size_t i) const { return motifs_[i]; }

    friend bool operator==(const MotifSet&, const MotifSet&) = default;

private:
    std::optional<std::string> label_;
    std::vector<Segment> motifs_;
};

enum class CollectionKind { ground_truth, discovered };

class MotifSetCollection {
public:
    explicit MotifSetCollection(CollectionKind kind, std::vector<MotifSet> sets = {})
        : kind_(kind), sets_(std::move(sets)) {}

    static MotifSetCollection ground_truth(std::vector<MotifSet> sets) {
        return MotifSetCollection(CollectionKind::ground_truth, std::move(sets));
    }
    static MotifSetCollection discovered(std::vector<MotifSet> sets) {
        return MotifSetCollection(CollectionKind::discovered, std::move(sets));
    }

    CollectionKind kind() const noexcept { return kind_; }
    const std::vector<MotifSet>& sets() const noexcept { return sets_; }
    std::size_t size() const noexcept { return sets_.size(); }
    bool empty() const noexcept { return sets_.empty(); }
    const MotifSet& operator[](std::size_t i) const { return sets_[i]; }

    /// Total number of motifs across all sets.
    std::size_t motif_count() const noexcept;

    /// Same sets, different kind tag.
    MotifSetCollection as(CollectionKind kind) const { return MotifSetCollection(kind, sets_); }

    friend bool operator==(const MotifSetCollection&, const MotifSetCollection&) = default;

private:
    CollectionKind kind_;
    std::vector<MotifSet> sets_;
};

/// Position of one motif inside a collection.
struct MotifRef {
    std::size_t set = 0;
    std::size_t motif = 0;
    friend constexpr bool operator==(const MotifRef&, const MotifRef&) = default;
    friend constexpr auto operator<=>(const MotifRef&, const MotifRef&) = default;
};

struct OverlapViolation {
    MotifRef first;
    MotifRef second;
};

struct GroundTruthReport {
    std::vector<OverlapViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Lists every pair of intersecting segments in `collection`. Never throws on bad data.
GroundTruthReport validate_ground_truth(const MotifSetCollection& collection);

/// Throws GroundTruthOverlap naming the first offending pair.
void require_valid_ground_truth(const MotifSetCollection& collection);

enum class Averaging { micro, macro };

/// Evaluation options. A pair is matchable iff its overlap rate is strictly above
/// `or_threshold`; thresholds below 0.5 would break the at-most-one-partner property.
struct EvalConfig {
    double or_threshold = 0.5;
    bool penalize_off_target = false;
    Averaging averaging = Averaging::micro;

    void validate() const;
};

}  // namespace motifeval
