#include "commbound/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "commbound/error.hpp"

namespace commbound::lp {

std::string to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

namespace {

// Row 0 of the tableau holds reduced costs for "maximize": a negative entry
// marks an improving column. Column `rhs_` is the right-hand side.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols, const Options& opts)
        : rows_(rows), cols_(cols), rhs_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0),
          allowed_(cols, true), opts_(opts) {}

    double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
    double& obj(std::size_t c) { return at(0, c); }
    double& rhs(std::size_t row) { return at(row + 1, rhs_); }
    double& coef(std::size_t row, std::size_t c) { return at(row + 1, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }
    std::vector<bool>& allowed() { return allowed_; }
    std::vector<bool>& dead_rows() { return dead_; }

    void pivot(std::size_t row, std::size_t col) {
        const double p = coef(row, col);
        for (std::size_t c = 0; c <= cols_; ++c) coef(row, c) /= p;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == row + 1) continue;
            const double f = at(r, col);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * coef(row, c);
            at(r, col) = 0.0;
        }
        basis_[row] = col;
    }

    // Express the objective row in terms of the current basis.
    void canonicalize() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!dead_.empty() && dead_[i]) continue;
            const double f = obj(basis_[i]);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) obj(c) -= f * coef(i, c);
        }
    }

    Status optimize(std::size_t& iterations) {
        const double tol = opts_.tolerance;
        while (true) {
            if (iterations >= opts_.max_iterations) return Status::iteration_limit;
            // Bland: lowest-index improving column.
            std::size_t enter = cols_;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (allowed_[c] && obj(c) < -tol) {
                    enter = c;
                    break;
                }
            }
            if (enter == cols_) return Status::optimal;
            // Ratio test; ties go to the lowest basic variable index.
            std::size_t leave = rows_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!dead_.empty() && dead_[i]) continue;
                const double a = coef(i, enter);
                if (a <= tol) continue;
                const double ratio = rhs(i) / a;
                if (ratio < best - tol || (std::abs(ratio - best) <= tol && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows_) return Status::unbounded;
            pivot(leave, enter);
            ++iterations;
        }
    }

    double objective_value() const { return at(0, rhs_); }

private:
    std::size_t rows_, cols_, rhs_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
    std::vector<bool> allowed_;
    std::vector<bool> dead_;
    Options opts_;
};

}  // namespace

Solution solve(const LinearProgram& lp, Options opts) {
    const std::size_t n = lp.num_vars();
    for (const auto& c : lp.constraints)
        if (c.coeffs.size() != n) throw ArgumentError("LP constraint has wrong number of coefficients");
    std::vector<bool> is_free = lp.free;
    is_free.resize(n, false);

    // Structural columns: x_j (or x_j+ and x_j- for free variables).
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = cols++;
        if (is_free[j]) neg_col[j] = cols++;
    }
    const std::size_t structural = cols;

    const std::size_t m = lp.constraints.size();
    std::vector<double> sign(m, 1.0);
    std::vector<Sense> sense(m);
    std::size_t slack_count = 0, art_count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sense[i] = lp.constraints[i].sense;
        if (lp.constraints[i].rhs < 0) {
            sign[i] = -1.0;
            if (sense[i] == Sense::less_equal) sense[i] = Sense::greater_equal;
            else if (sense[i] == Sense::greater_equal) sense[i] = Sense::less_equal;
        }
        if (sense[i] != Sense::equal) ++slack_count;
        if (sense[i] != Sense::less_equal) ++art_count;
    }
    const std::size_t art_begin = structural + slack_count;
    const std::size_t total = art_begin + art_count;

    Tableau tab(m, total, opts);
    std::size_t slack = structural, art = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& con = lp.constraints[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double a = sign[i] * con.coeffs[j];
            tab.coef(i, pos_col[j]) = a;
            if (is_free[j]) tab.coef(i, neg_col[j]) = -a;
        }
        tab.rhs(i) = sign[i] * con.rhs;
        if (sense[i] == Sense::less_equal) {
            tab.coef(i, slack) = 1.0;
            tab.basis()[i] = slack++;
        } else {
            if (sense[i] == Sense::greater_equal) tab.coef(i, slack++) = -1.0;
            tab.coef(i, art) = 1.0;
            tab.basis()[i] = art++;
        }
    }

    Solution sol;
    // Phase 1: maximize -(sum of artificials).
    if (art_count > 0) {
        for (std::size_t c = art_begin; c < total; ++c) tab.obj(c) = 1.0;
        tab.canonicalize();
        const Status s = tab.optimize(sol.iterations);
        if (s == Status::iteration_limit) {
            sol.status = s;
            return sol;
        }
        double scale = 1.0;
        for (const auto& con : lp.constraints) scale = std::max(scale, std::abs(con.rhs));
        if (-tab.objective_value() > opts.tolerance * scale * static_cast<double>(m)) {
            sol.status = Status::infeasible;
            return sol;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        tab.dead_rows().assign(m, false);
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis()[i] < art_begin) continue;
            std::size_t col = art_begin;
            for (std::size_t c = 0; c < art_begin; ++c) {
                if (std::abs(tab.coef(i, c)) > opts.tolerance) {
                    col = c;
                    break;
                }
            }
            if (col < art_begin) {
                tab.pivot(i, col);
            } else {
                tab.dead_rows()[i] = true;
                ++sol.redundant_rows;
            }
        }
        for (std::size_t c = art_begin; c < total; ++c) tab.allowed()[c] = false;
    }

    // Phase 2.
    for (std::size_t c = 0; c <= total; ++c) tab.obj(c) = 0.0;
    const double dir = lp.maximize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        tab.obj(pos_col[j]) = -dir * lp.objective[j];
        if (is_free[j]) tab.obj(neg_col[j]) = dir * lp.objective[j];
    }
    tab.canonicalize();
    sol.status = tab.optimize(sol.iterations);
    if (sol.status != Status::optimal) return sol;

    std::vector<double> value(total, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (!tab.dead_rows().empty() && tab.dead_rows()[i]) continue;
        value[tab.basis()[i]] = tab.rhs(i);
    }
    sol.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        sol.x[j] = value[pos_col[j]];
        if (is_free[j]) sol.x[j] -= value[neg_col[j]];
    }
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

}  // namespace commbound::lp
