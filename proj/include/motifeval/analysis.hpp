#pragma once

#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "motifeval/errors.hpp"

namespace motifeval {

enum class Direction { higher_better, lower_better };

struct ResultRecord {
    std::string dataset;
    std::string series;
    std::string method;
    std::string metric;
    double value = 0.0;
};

/// Flat (dataset, series, method, metric) -> value table.
class ResultsTable {
public:
    /// Throws std::invalid_argument on a duplicate key.
    void add(ResultRecord record);

    /// "S" and "score" default to lower_better, everything else to higher_better.
    Direction direction(const std::string& metric) const;
    void set_direction(const std::string& metric, Direction d) { directions_[metric] = d; }
    const std::map<std::string, Direction>& directions() const noexcept { return directions_; }

    const std::vector<ResultRecord>& records() const noexcept { return records_; }
    std::vector<std::string> metrics() const;
    std::vector<std::string> datasets() const;
    std::vector<std::string> methods() const;

    using RowKey = std::tuple<std::string, std::string, std::string>;  // dataset, series, method
    /// Values of `metric` keyed by row; throws MissingCell if any row lacks it.
    std::map<RowKey, double> column(const std::string& metric) const;

private:
    std::vector<ResultRecord> records_;
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::size_t> index_;
    std::map<std::string, Direction> directions_;
};

/// Tau-b rank correlation in O(n log n). Values are oriented best-to-worst by
/// `dir_a` / `dir_b` first. Throws DegenerateInput when a list is entirely tied.
double kendall_tau(std::span<const double> a, std::span<const double> b, Direction dir_a = Direction::higher_better,
                   Direction dir_b = Direction::higher_better);

enum class TauMode { combined, per_dataset_average };

struct TauMatrix {
    std::vector<std::string> metrics;
    Eigen::MatrixXd tau;
};

TauMatrix tau_matrix(const ResultsTable& table, TauMode mode);

struct MethodRank {
    std::string method;
    double average_rank = 0.0;
};

/// Average over datasets of each method's rank (1 = best, ties averaged) by its mean
/// `metric` value on that dataset. Throws MissingCell naming absent (dataset, method) pairs.
std::vector<MethodRank> average_ranks(const ResultsTable& table, const std::string& metric);

/// Fractional ranks (1 = best, ties share their mean rank) of `values` under `dir`.
std::vector<double> fractional_ranks(std::span<const double> values, Direction dir);

}  // namespace motifeval
