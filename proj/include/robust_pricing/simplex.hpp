#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace robust_pricing::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
    Status status;
    double objective;
    std::vector<double> x;
};

/**
 * Dense two-phase tableau simplex for  min c.x  s.t.  A x = b, x >= 0.
 *
 * Intended for a handful of rows and many columns (discretized moment
 * problems). Dantzig pricing, switching to Bland's rule after a run of
 * degenerate pivots.
 */
class DenseSimplex {
public:
    DenseSimplex(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> c)
        : rows_(b.size()), cols_(c.size()), cost_(std::move(c)) {
        width_ = cols_ + rows_ + 1;
        tab_.assign(rows_, std::vector<double>(width_, 0.0));
        for (std::size_t r = 0; r < rows_; ++r) {
            const double sign = b[r] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < cols_; ++j) tab_[r][j] = sign * a[r][j];
            tab_[r][cols_ + r] = 1.0;
            tab_[r][width_ - 1] = sign * b[r];
        }
        basis_.resize(rows_);
        for (std::size_t r = 0; r < rows_; ++r) basis_[r] = cols_ + r;
    }

    Solution solve(int max_iter = 100000) {
        // phase 1: minimize the sum of artificials
        std::vector<double> phase1(cols_ + rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) phase1[cols_ + r] = 1.0;
        Status st = iterate(phase1, cols_ + rows_, max_iter);
        if (st == Status::IterationLimit) return {st, 0.0, {}};
        if (objective(phase1) > kFeasTol) return {Status::Infeasible, 0.0, {}};
        evict_artificials();

        std::vector<double> phase2(cols_ + rows_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j) phase2[j] = cost_[j];
        st = iterate(phase2, cols_, max_iter);
        if (st != Status::Optimal) return {st, 0.0, {}};

        std::vector<double> x(cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] < cols_) x[basis_[r]] = tab_[r][width_ - 1];
        return {Status::Optimal, objective(phase2), std::move(x)};
    }

private:
    static constexpr double kPivotTol = 1e-11;
    static constexpr double kCostTol = 1e-12;
    static constexpr double kFeasTol = 1e-10;

    double objective(const std::vector<double>& c) const {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += c[basis_[r]] * tab_[r][width_ - 1];
        return s;
    }

    double reduced_cost(const std::vector<double>& c, std::size_t j) const {
        double d = c[j];
        for (std::size_t r = 0; r < rows_; ++r) d -= c[basis_[r]] * tab_[r][j];
        return d;
    }

    // columns [0, allowed) may enter the basis
    Status iterate(const std::vector<double>& c, std::size_t allowed, int max_iter) {
        int degenerate_run = 0;
        for (int it = 0; it < max_iter; ++it) {
            const bool bland = degenerate_run > 50;
            std::size_t enter = allowed;
            double best = -kCostTol;
            for (std::size_t j = 0; j < allowed; ++j) {
                const double d = reduced_cost(c, j);
                if (d < best) {
                    enter = j;
                    best = d;
                    if (bland) break;
                }
            }
            if (enter == allowed) return Status::Optimal;

            std::size_t leave = rows_;
            double ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_; ++r) {
                const double a = tab_[r][enter];
                if (a <= kPivotTol) continue;
                const double t = tab_[r][width_ - 1] / a;
                if (t < ratio || (t == ratio && leave < rows_ && basis_[r] < basis_[leave])) {
                    ratio = t;
                    leave = r;
                }
            }
            if (leave == rows_) return Status::Unbounded;
            degenerate_run = ratio <= 0.0 ? degenerate_run + 1 : 0;
            pivot(leave, enter);
        }
        return Status::IterationLimit;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double piv = tab_[row][col];
        for (double& v : tab_[row]) v /= piv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row) continue;
            const double f = tab_[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) tab_[r][j] -= f * tab_[row][j];
            tab_[r][col] = 0.0;
        }
        for (double& v : tab_[row])
            if (std::abs(v) < 1e-300) v = 0.0;
        basis_[row] = col;
    }

    void evict_artificials() {
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < cols_) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (std::abs(tab_[r][j]) > kPivotTol) {
                    pivot(r, j);
                    break;
                }
            }
            // a row with no structural entry is redundant; its artificial stays at zero
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::size_t width_;
    std::vector<double> cost_;
    std::vector<std::vector<double>> tab_;
    std::vector<std::size_t> basis_;
};

} // namespace robust_pricing::lp
