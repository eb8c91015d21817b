#pragma once

// Linear sum assignment over dense Eigen matrices.
//
// solve_min_cost() is the O(n^3) shortest-augmenting-path form of the Hungarian
// method on a square matrix. The max-profit wrappers pad rectangular inputs to
// square with zero profit and drop the padded slots from the result.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace motifeval {

/// Row-to-column map; -1 marks a row left without a real column.
struct Assignment {
    std::vector<int> row_to_col;

    std::size_t pairs() const {
        return static_cast<std::size_t>(std::count_if(row_to_col.begin(), row_to_col.end(), [](int c) { return c >= 0; }));
    }
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <typename Scalar>
std::vector<int> hungarian(const DenseMatrix<Scalar>& cost) {
    const int n = static_cast<int>(cost.rows());
    const Scalar inf = std::numeric_limits<Scalar>::has_infinity ? std::numeric_limits<Scalar>::infinity()
                                                                  : std::numeric_limits<Scalar>::max();
    std::vector<Scalar> u(n + 1, Scalar(0)), v(n + 1, Scalar(0)), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), char(0));
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            Scalar delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const Scalar cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

template <typename Derived>
auto padded_profit(const Eigen::MatrixBase<Derived>& profit) {
    using Scalar = typename Derived::Scalar;
    const auto n = std::max(profit.rows(), profit.cols());
    DenseMatrix<Scalar> square = DenseMatrix<Scalar>::Zero(n, n);
    square.topLeftCorner(profit.rows(), profit.cols()) = profit;
    return square;
}

template <typename Scalar>
Assignment trim(std::vector<int> square_rows, Eigen::Index rows, Eigen::Index cols) {
    square_rows.resize(static_cast<std::size_t>(rows));
    for (auto& c : square_rows)
        if (c >= cols) c = -1;
    return {std::move(square_rows)};
}

}  // namespace detail

/// Minimum-cost perfect assignment on a square matrix.
template <typename Derived>
std::vector<int> solve_min_cost(const Eigen::MatrixBase<Derived>& cost) {
    using Scalar = typename Derived::Scalar;
    if (cost.rows() != cost.cols()) throw std::invalid_argument("solve_min_cost expects a square matrix");
    if (cost.rows() == 0) return {};
    return detail::hungarian<Scalar>(cost.eval());
}

/// Objective sum_i profit(i, a(i)) over assigned rows.
template <typename Derived>
typename Derived::Scalar assignment_value(const Eigen::MatrixBase<Derived>& profit, const Assignment& a) {
    typename Derived::Scalar total(0);
    for (std::size_t i = 0; i < a.row_to_col.size(); ++i)
        if (a.row_to_col[i] >= 0) total += profit(static_cast<Eigen::Index>(i), a.row_to_col[i]);
    return total;
}

/// Maximum-profit assignment of a rectangular matrix: exactly min(rows, cols) pairs.
template <typename Derived>
Assignment max_profit_assignment(const Eigen::MatrixBase<Derived>& profit) {
    using Scalar = typename Derived::Scalar;
    if (profit.size() == 0) return {std::vector<int>(static_cast<std::size_t>(profit.rows()), -1)};
    auto square = detail::padded_profit(profit);
    const Scalar top = square.maxCoeff();
    DenseMatrix<Scalar> cost = (DenseMatrix<Scalar>::Constant(square.rows(), square.cols(), top) - square).eval();
    return detail::trim<Scalar>(detail::hungarian<Scalar>(cost), profit.rows(), profit.cols());
}

/// Maximum-profit assignment of an integer matrix, breaking ties toward the
/// lexicographically smallest row-to-column vector of the zero-padded square problem.
template <typename Derived>
Assignment lexmin_max_profit_assignment(const Eigen::MatrixBase<Derived>& profit) {
    using Scalar = typename Derived::Scalar;
    static_assert(std::is_integral_v<Scalar>, "exact tie-breaking needs integer profits");
    if (profit.size() == 0) return {std::vector<int>(static_cast<std::size_t>(profit.rows()), -1)};

    const DenseMatrix<Scalar> square = detail::padded_profit(profit);
    const auto n = static_cast<int>(square.rows());

    auto best_remaining = [&](const std::vector<int>& rows, const std::vector<int>& cols) -> Scalar {
        if (rows.empty()) return 0;
        DenseMatrix<Scalar> sub(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = square(rows[r], cols[c]);
        const auto a = max_profit_assignment(sub);
        return assignment_value(sub, a);
    };

    std::vector<int> free_rows(n), free_cols(n);
    std::iota(free_rows.begin(), free_rows.end(), 0);
    std::iota(free_cols.begin(), free_cols.end(), 0);
    Scalar target = best_remaining(free_rows, free_cols);

    std::vector<int> row_to_col(n, -1);
    for (int r = 0; r < n; ++r) {
        free_rows.erase(free_rows.begin());
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            const int c = free_cols[k];
            std::vector<int> rest = free_cols;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
            const Scalar rest_value = best_remaining(free_rows, rest);
            if (square(r, c) + rest_value == target) {
                row_to_col[r] = c;
                target = rest_value;
                free_cols = std::move(rest);
                break;
            }
        }
    }
    return detail::trim<Scalar>(std::move(row_to_col), profit.rows(), profit.cols());
}

}  // namespace motifeval
