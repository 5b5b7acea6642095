#pragma once

// epsilon-approximate degree by linear programming, and the dual polynomial
// that certifies it.

#include <cstddef>
#include <vector>

#include "commbound/boolfn.hpp"
#include "commbound/simplex.hpp"

namespace commbound {

struct LpDiagnostics {
    std::size_t degree = 0;  // degree bound the LP was solved for
    lp::Status status = lp::Status::optimal;
    double objective = 0.0;
    std::size_t iterations = 0;
    std::size_t variables = 0;
    std::size_t constraints = 0;
};

struct ApproxDegreeResult {
    std::size_t d = 0;
    FourierSpectrum approximant;
    double error = 0.0;  // max_x |f(x) - approximant(x)|, recomputed pointwise
    std::vector<LpDiagnostics> lp_status;
};

struct ChebyshevFit {
    double error = 0.0;  // LP optimum
    FourierSpectrum approximant;
    LpDiagnostics diagnostics;
};

/// Best uniform approximation of f by polynomials of degree <= d.
/// Throws SolverError if the LP does not reach optimality.
ChebyshevFit best_approximation(const BoolFunction& f, std::size_t d);

/// Smallest d with best_approximation(f, d).error <= epsilon (+1e-9).
/// epsilon = 0 takes the exact path: d = degree(f).
ApproxDegreeResult approx_degree(const BoolFunction& f, double epsilon);

struct DualWitness {
    RealPointFunction v;
    std::size_t d = 0;
    double epsilon = 0.0;
    double correlation = 0.0;  // sum_x v(x) f(x)
    double l1 = 0.0;           // sum_x |v(x)|
};

/// Dual witness at d = approx_degree(f, epsilon).d.
DualWitness dual_polynomial(const BoolFunction& f, double epsilon);

/// Dual witness for an explicit degree threshold d: v is orthogonal to every
/// character of degree < d and maximizes correlation with f. The result is
/// scaled to l1 = 1.
DualWitness dual_polynomial_at(const BoolFunction& f, std::size_t d, double epsilon);

struct DualCheck {
    // Raw margins; a check passes when its margin is >= -tolerance.
    double orthogonality_margin = 0.0;  // -max_{|T|<d} |<v, chi_T>|
    double l1_margin = 0.0;             // 1 - sum |v|
    double correlation_margin = 0.0;    // <v, f> - epsilon
    bool orthogonal = false;
    bool l1_ok = false;
    bool correlated = false;
    bool passed() const { return orthogonal && l1_ok && correlated; }
};

/// Recomputes every witness property by direct summation. Tolerances follow
/// the witness invariants: 1e-8 for orthogonality and correlation, 1e-9 for l1.
/// Throws ArgumentError when arities differ.
DualCheck verify_dual(const DualWitness& w, const BoolFunction& f);

}  // namespace commbound
