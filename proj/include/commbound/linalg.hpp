#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "commbound/matrix.hpp"

namespace commbound {

inline constexpr double kDefaultTolerance = 1e-9;

/// Rank over the rationals by fraction-free (Bareiss) elimination on
/// arbitrary-precision integers. Exact and deterministic.
std::size_t exact_rank(const SignMatrix& m);
std::size_t exact_rank(const IntMatrix& m);

struct SpectrumReport {
    std::vector<double> singular_values;  // descending
    double spectral_norm = 0.0;
    double trace_norm = 0.0;
    double frobenius_norm = 0.0;
    std::size_t numeric_rank = 0;  // #{sigma_i > tolerance * sigma_1}
    double tolerance = kDefaultTolerance;
    std::size_t sweeps = 0;
};

struct JacobiOptions {
    std::size_t max_sweeps = 100;
    double off_diagonal_tol = 1e-14;  // relative to ||A^T A||_F
};

/// Singular values by one-sided cyclic Jacobi, i.e. Jacobi rotations on the
/// Gram matrix A^T A applied implicitly to the columns of A.
/// Throws ArgumentError if tolerance <= 0, SolverError on non-convergence.
SpectrumReport spectrum(const RealMatrix& m, double tolerance = kDefaultTolerance,
                        JacobiOptions opts = {});
SpectrumReport spectrum(const SignMatrix& m, double tolerance = kDefaultTolerance,
                        JacobiOptions opts = {});
SpectrumReport spectrum(const ComplexMatrix& m, double tolerance = kDefaultTolerance,
                        JacobiOptions opts = {});

inline double spectral_norm(const RealMatrix& m) { return spectrum(m).spectral_norm; }
inline double spectral_norm(const SignMatrix& m) { return spectrum(m).spectral_norm; }

struct BalanceReport {
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    bool balanced = false;           // total sum is zero
    bool strongly_balanced = false;  // every row and column sum is zero
};

BalanceReport balance_check(const SignMatrix& m);

}  // namespace commbound
