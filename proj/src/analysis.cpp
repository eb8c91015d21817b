#include "motifeval/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace motifeval {

void ResultsTable::add(ResultRecord record) {
    auto key = std::tuple(record.dataset, record.series, record.method, record.metric);
    if (index_.count(key))
        throw std::invalid_argument("duplicate result (" + record.dataset + ", " + record.series + ", " + record.method +
                                    ", " + record.metric + ")");
    index_.emplace(std::move(key), records_.size());
    records_.push_back(std::move(record));
}

Direction ResultsTable::direction(const std::string& metric) const {
    if (auto it = directions_.find(metric); it != directions_.end()) return it->second;
    return metric == "S" || metric == "score" ? Direction::lower_better : Direction::higher_better;
}

namespace {

std::vector<std::string> distinct(const std::vector<ResultRecord>& records, std::string ResultRecord::*field) {
    std::set<std::string> s;
    for (const auto& r : records) s.insert(r.*field);
    return {s.begin(), s.end()};
}

std::int64_t tied_pairs(std::span<const double> sorted) {
    std::int64_t ties = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const auto t = static_cast<std::int64_t>(j - i);
        ties += t * (t - 1) / 2;
        i = j;
    }
    return ties;
}

// Merge sort that returns the number of strict inversions.
std::int64_t sort_count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = sort_count_inversions(v, buf, lo, mid) + sort_count_inversions(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += static_cast<std::int64_t>(mid - i);
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

std::vector<std::string> ResultsTable::metrics() const { return distinct(records_, &ResultRecord::metric); }
std::vector<std::string> ResultsTable::datasets() const { return distinct(records_, &ResultRecord::dataset); }
std::vector<std::string> ResultsTable::methods() const { return distinct(records_, &ResultRecord::method); }

std::map<ResultsTable::RowKey, double> ResultsTable::column(const std::string& metric) const {
    std::set<RowKey> rows;
    std::map<RowKey, double> out;
    for (const auto& r : records_) {
        RowKey key{r.dataset, r.series, r.method};
        rows.insert(key);
        if (r.metric == metric) out[key] = r.value;
    }
    for (const auto& key : rows)
        if (!out.count(key))
            throw MissingCell("metric '" + metric + "' missing for (" + std::get<0>(key) + ", " + std::get<1>(key) +
                              ", " + std::get<2>(key) + ")");
    return out;
}

double kendall_tau(std::span<const double> a, std::span<const double> b, Direction dir_a, Direction dir_b) {
    if (a.size() != b.size()) throw std::invalid_argument("kendall_tau needs equal-length lists");
    if (a.size() < 2) throw DegenerateInput("kendall_tau needs at least two pairs");
    const std::size_t n = a.size();

    std::vector<std::pair<double, double>> xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(a[i]) || std::isnan(b[i])) throw std::invalid_argument("kendall_tau input contains NaN");
        xy[i] = {dir_a == Direction::lower_better ? -a[i] : a[i], dir_b == Direction::lower_better ? -b[i] : b[i]};
    }
    std::sort(xy.begin(), xy.end());

    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) std::tie(xs[i], ys[i]) = xy[i];

    const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    const std::int64_t x_ties = tied_pairs(xs);
    std::int64_t joint_ties = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && xy[j] == xy[i]) ++j;
        const auto t = static_cast<std::int64_t>(j - i);
        joint_ties += t * (t - 1) / 2;
        i = j;
    }

    // With xs sorted (ties ordered by y), inversions among ys are exactly the discordant pairs.
    std::vector<double> buf(n);
    const std::int64_t discordant = sort_count_inversions(ys, buf, 0, n);
    const std::int64_t y_ties = tied_pairs(ys);

    if (total == x_ties || total == y_ties) throw DegenerateInput("kendall_tau undefined: a list is entirely tied");
    const auto s = static_cast<double>(total - x_ties - y_ties + joint_ties - 2 * discordant);
    return s / std::sqrt(static_cast<double>(total - x_ties) * static_cast<double>(total - y_ties));
}

TauMatrix tau_matrix(const ResultsTable& table, TauMode mode) {
    TauMatrix out;
    out.metrics = table.metrics();
    const auto k = static_cast<Eigen::Index>(out.metrics.size());
    out.tau = Eigen::MatrixXd::Identity(k, k);

    std::vector<std::map<ResultsTable::RowKey, double>> columns;
    for (const auto& m : out.metrics) columns.push_back(table.column(m));

    // Groups of row keys over which tau is computed.
    std::vector<std::vector<ResultsTable::RowKey>> groups;
    if (mode == TauMode::combined) {
        groups.emplace_back();
        if (!columns.empty())
            for (const auto& [key, v] : columns.front()) groups.back().push_back(key);
    } else {
        std::map<std::string, std::vector<ResultsTable::RowKey>> by_dataset;
        if (!columns.empty())
            for (const auto& [key, v] : columns.front()) by_dataset[std::get<0>(key)].push_back(key);
        for (auto& [name, keys] : by_dataset) groups.push_back(std::move(keys));
    }

    for (Eigen::Index p = 0; p < k; ++p) {
        for (Eigen::Index q = p + 1; q < k; ++q) {
            double sum = 0.0;
            for (const auto& keys : groups) {
                std::vector<double> a, b;
                for (const auto& key : keys) {
                    a.push_back(columns[static_cast<std::size_t>(p)].at(key));
                    b.push_back(columns[static_cast<std::size_t>(q)].at(key));
                }
                try {
                    sum += kendall_tau(a, b, table.direction(out.metrics[static_cast<std::size_t>(p)]),
                                       table.direction(out.metrics[static_cast<std::size_t>(q)]));
                } catch (const DegenerateInput& e) {
                    const std::string where = mode == TauMode::combined ? "" : " on dataset '" + std::get<0>(keys.front()) + "'";
                    throw DegenerateInput(std::string(e.what()) + " (" + out.metrics[static_cast<std::size_t>(p)] + " vs " +
                                          out.metrics[static_cast<std::size_t>(q)] + where + ")");
                }
            }
            out.tau(p, q) = out.tau(q, p) = sum / static_cast<double>(groups.size());
        }
    }
    return out;
}

std::vector<double> fractional_ranks(std::span<const double> values, Direction dir) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto better = [&](std::size_t i, std::size_t j) {
        return dir == Direction::higher_better ? values[i] > values[j] : values[i] < values[j];
    };
    std::stable_sort(order.begin(), order.end(), better);
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = mean_rank;
        i = j;
    }
    return ranks;
}

std::vector<MethodRank> average_ranks(const ResultsTable& table, const std::string& metric) {
    const auto datasets = table.datasets();
    const auto methods = table.methods();

    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> sums;
    for (const auto& r : table.records()) {
        if (r.metric != metric) continue;
        auto& [sum, count] = sums[{r.dataset, r.method}];
        sum += r.value;
        ++count;
    }
    std::string missing;
    for (const auto& ds : datasets)
        for (const auto& m : methods)
            if (!sums.count({ds, m})) missing += (missing.empty() ? "" : ", ") + ("(" + ds + ", " + m + ")");
    if (!missing.empty()) throw MissingCell("metric '" + metric + "' missing for " + missing);

    std::vector<double> total(methods.size(), 0.0);
    for (const auto& ds : datasets) {
        std::vector<double> means;
        for (const auto& m : methods) {
            const auto& [sum, count] = sums.at({ds, m});
            means.push_back(sum / static_cast<double>(count));
        }
        const auto ranks = fractional_ranks(means, table.direction(metric));
        for (std::size_t i = 0; i < methods.size(); ++i) total[i] += ranks[i];
    }

    std::vector<MethodRank> out;
    for (std::size_t i = 0; i < methods.size(); ++i)
        out.push_back({methods[i], datasets.empty() ? 0.0 : total[i] / static_cast<double>(datasets.size())});
    return out;
}

}  // namespace motifeval
