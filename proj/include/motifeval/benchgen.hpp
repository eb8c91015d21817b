#pragma once

// Benchmark series built by concatenating labeled classification instances.
//
// Each series alternates GT motifs and single filler instances, starting and
// ending with a motif:  m f m f m ... m.  A motif class repeats; a filler class
// appears once per series and is never a motif class of that series.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motifeval/core.hpp"

namespace motifeval {

struct Instance {
    std::size_t id = 0;  // stable across splits
    TimeSeries values;
};

struct InstanceClass {
    std::string label;
    std::vector<Instance> instances;
};

struct InstanceDataset {
    std::string name;
    Index dimensions = 1;
    std::vector<InstanceClass> classes;

    std::size_t class_count() const noexcept { return classes.size(); }
    std::size_t instance_count() const noexcept;

    /// Throws std::invalid_argument on empty classes, dimension mismatch or duplicate ids.
    void validate() const;
};

/// Upper bound on GT motif sets per series for a c-class dataset: floor((c + 1) / 3).
constexpr std::size_t g_max(std::size_t class_count) noexcept { return (class_count + 1) / 3; }

struct LayoutEntry {
    Segment segment;
    std::size_t class_index = 0;
    std::size_t instance_id = 0;
    bool is_motif = false;
};

struct LabeledSegment {
    Segment segment;
    std::string label;
    friend bool operator==(const LabeledSegment&, const LabeledSegment&) = default;
};

struct Provenance {
    std::string dataset;
    std::string split;
    std::uint64_t seed = 0;
    std::size_t series_index = 0;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct BenchmarkSeries {
    TimeSeries series;
    MotifSetCollection ground_truth{CollectionKind::ground_truth};
    std::vector<LabeledSegment> fillers;
    std::vector<LayoutEntry> layout;
    Provenance provenance;
};

struct GenerationConstraints {
    std::optional<std::size_t> num_sets;      // forces g
    std::vector<std::size_t> cardinalities;   // forces k_i (implies g = size)
    std::size_t max_cardinality = 5;
};

/// Samples one benchmark series. Deterministic in (pool, seed, constraints).
BenchmarkSeries generate_series(const InstanceDataset& pool, std::uint64_t seed,
                                const GenerationConstraints& constraints = {});

/// Stratified per-class split into (validation, test). Each side keeps at least one
/// instance per class; instance ids are preserved.
std::pair<InstanceDataset, InstanceDataset> split_dataset(const InstanceDataset& pool, double validation_ratio = 0.25,
                                                          std::uint64_t seed = 0);

struct Benchmark {
    InstanceDataset validation_pool;
    InstanceDataset test_pool;
    std::vector<BenchmarkSeries> validation;
    std::vector<BenchmarkSeries> test;
};

struct BenchmarkOptions {
    std::size_t n_validation = 50;
    std::size_t n_test = 200;
    double validation_ratio = 0.25;
    GenerationConstraints constraints;
};

/// Splits `pool` and generates both series lists; series i of a split uses a
/// sub-seed derived from (seed, split, i).
Benchmark generate_benchmark(const InstanceDataset& pool, std::uint64_t seed, const BenchmarkOptions& options = {});

/// Sub-seed for series `index` of `split`.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view split, std::uint64_t index) noexcept;

/// Rebuilds the series values from the layout and the instance pool it was drawn from.
TimeSeries reconstruct_series(const BenchmarkSeries& series, const InstanceDataset& pool);

struct SyntheticPoolOptions {
    std::size_t classes = 6;
    std::size_t instances_per_class = 20;
    Index length = 128;
    Index dimensions = 1;
    double noise = 0.02;
    std::string name = "synthetic";
};

/// Smooth class-specific shapes plus low-amplitude smooth noise; instances of a class are
/// near-copies, classes differ in shape.
InstanceDataset synthetic_pool(const SyntheticPoolOptions& options, std::uint64_t seed);

}  // namespace motifeval
