#pragma once

// Dense two-phase tableau simplex with Bland's anti-cycling rule. Sized for
// the small Chebyshev-approximation LPs in this library (a few hundred rows
// and columns at most).

#include <cstddef>
#include <string>
#include <vector>

namespace commbound::lp {

enum class Sense { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible, unbounded, iteration_limit };

std::string to_string(Status s);

struct Constraint {
    std::vector<double> coeffs;  // one per variable
    Sense sense = Sense::less_equal;
    double rhs = 0.0;
};

/// maximize (or minimize) objective . x subject to constraints; a variable
/// is either nonnegative or free.
struct LinearProgram {
    bool maximize = true;
    std::vector<double> objective;
    std::vector<bool> free;  // empty means all nonnegative
    std::vector<Constraint> constraints;

    explicit LinearProgram(std::size_t num_vars = 0) : objective(num_vars, 0.0), free(num_vars, false) {}

    std::size_t num_vars() const { return objective.size(); }
    void add(std::vector<double> coeffs, Sense sense, double rhs) {
        constraints.push_back({std::move(coeffs), sense, rhs});
    }
};

struct Options {
    double tolerance = 1e-9;
    std::size_t max_iterations = 200000;
};

struct Solution {
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::size_t iterations = 0;
    std::size_t redundant_rows = 0;
};

/// Never throws for well-formed input; inspect status. Throws ArgumentError
/// when a constraint has the wrong number of coefficients.
Solution solve(const LinearProgram& lp, Options opts = {});

}  // namespace commbound::lp
