#include "commbound/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace commbound {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::size_t bareiss_rank(std::vector<std::vector<BigInt>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const BigInt& p = a[rank][col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                a[i][j] = (a[i][j] * p - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t exact_rank(const IntMatrix& m) {
    std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c);
    return bareiss_rank(std::move(a));
}

std::size_t exact_rank(const SignMatrix& m) { return exact_rank(m.to_int()); }

namespace {

// Column-major working copy so each Jacobi rotation touches contiguous memory.
struct Columns {
    std::size_t length;
    std::vector<std::vector<double>> cols;
};

Columns columns_of(const RealMatrix& m) {
    // Rotate the narrower side: singular values are shared with the transpose.
    const bool use_rows = m.rows() < m.cols();
    Columns out;
    if (use_rows) {
        out.length = m.cols();
        out.cols.assign(m.rows(), std::vector<double>(m.cols()));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) out.cols[r][c] = m(r, c);
    } else {
        out.length = m.rows();
        out.cols.assign(m.cols(), std::vector<double>(m.rows()));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) out.cols[c][r] = m(r, c);
    }
    return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> jacobi_singular_values(const RealMatrix& m, const JacobiOptions& opts,
                                           std::size_t& sweeps_used) {
    Columns work = columns_of(m);
    auto& u = work.cols;
    const std::size_t n = u.size();

    // ||A^T A||_F is invariant under the rotations, so compute it once.
    double gram_frob2 = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        const double a = dot(u[p], u[p]);
        gram_frob2 += a * a;
        for (std::size_t q = p + 1; q < n; ++q) {
            const double g = dot(u[p], u[q]);
            gram_frob2 += 2.0 * g * g;
        }
    }
    const double threshold2 = opts.off_diagonal_tol * opts.off_diagonal_tol * gram_frob2;

    bool converged = n <= 1 || gram_frob2 == 0.0;
    std::size_t sweep = 0;
    while (!converged && sweep < opts.max_sweeps) {
        ++sweep;
        double off2 = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = dot(u[p], u[p]);
                const double beta = dot(u[q], u[q]);
                const double gamma = dot(u[p], u[q]);
                // Columns orthogonal to working precision.
                if (std::abs(gamma) <= 4.0 * DBL_EPSILON * std::sqrt(alpha * beta)) continue;
                off2 += 2.0 * gamma * gamma;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                auto& up = u[p];
                auto& uq = u[q];
                for (std::size_t i = 0; i < work.length; ++i) {
                    const double x = up[i];
                    const double y = uq[i];
                    up[i] = c * x - s * y;
                    uq[i] = s * x + c * y;
                }
            }
        }
        converged = off2 <= threshold2;
    }
    if (!converged) {
        throw SolverError("Jacobi singular value iteration did not converge in " +
                          std::to_string(opts.max_sweeps) + " sweeps");
    }
    sweeps_used = sweep;

    std::vector<double> sv(n);
    for (std::size_t p = 0; p < n; ++p) sv[p] = std::sqrt(dot(u[p], u[p]));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

SpectrumReport make_report(std::vector<double> sv, double tolerance, std::size_t sweeps) {
    SpectrumReport rep;
    rep.tolerance = tolerance;
    rep.sweeps = sweeps;
    rep.singular_values = std::move(sv);
    if (!rep.singular_values.empty()) rep.spectral_norm = rep.singular_values.front();
    double sq = 0.0;
    for (double s : rep.singular_values) {
        rep.trace_norm += s;
        sq += s * s;
        if (s > tolerance * rep.spectral_norm) ++rep.numeric_rank;
    }
    rep.frobenius_norm = std::sqrt(sq);
    return rep;
}

void check_tolerance(double tolerance) {
    if (!(tolerance > 0.0)) throw ArgumentError("spectrum tolerance must be positive");
}

}  // namespace

SpectrumReport spectrum(const RealMatrix& m, double tolerance, JacobiOptions opts) {
    check_tolerance(tolerance);
    std::size_t sweeps = 0;
    auto sv = jacobi_singular_values(m, opts, sweeps);
    return make_report(std::move(sv), tolerance, sweeps);
}

SpectrumReport spectrum(const SignMatrix& m, double tolerance, JacobiOptions opts) {
    return spectrum(m.to_real(), tolerance, opts);
}

SpectrumReport spectrum(const ComplexMatrix& m, double tolerance, JacobiOptions opts) {
    check_tolerance(tolerance);
    // [[Re, -Im], [Im, Re]] has the singular values of m, each twice.
    const std::size_t r = m.rows(), c = m.cols();
    RealMatrix embed(2 * r, 2 * c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const auto z = m(i, j);
            embed(i, j) = z.real();
            embed(i, j + c) = -z.imag();
            embed(i + r, j) = z.imag();
            embed(i + r, j + c) = z.real();
        }
    std::size_t sweeps = 0;
    auto doubled = jacobi_singular_values(embed, opts, sweeps);
    std::vector<double> sv;
    sv.reserve(doubled.size() / 2);
    for (std::size_t i = 0; i < doubled.size(); i += 2) sv.push_back(doubled[i]);
    return make_report(std::move(sv), tolerance, sweeps);
}

BalanceReport balance_check(const SignMatrix& m) {
    BalanceReport rep;
    rep.row_sums.assign(m.rows(), 0);
    rep.col_sums.assign(m.cols(), 0);
    std::int64_t total = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            rep.row_sums[r] += m(r, c);
            rep.col_sums[c] += m(r, c);
            total += m(r, c);
        }
    rep.balanced = total == 0;
    const auto zero = [](std::int64_t v) { return v == 0; };
    rep.strongly_balanced = std::all_of(rep.row_sums.begin(), rep.row_sums.end(), zero) &&
                            std::all_of(rep.col_sums.begin(), rep.col_sums.end(), zero);
    return rep;
}

}  // namespace commbound
