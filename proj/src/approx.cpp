#include "commbound/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "commbound/error.hpp"

namespace commbound {

namespace {

constexpr double kFeasibilitySlack = 1e-9;

std::vector<Mask> subsets_below(std::size_t n, std::size_t bound) {
    std::vector<Mask> out;
    for (Mask t = 0; t < (Mask{1} << n); ++t)
        if (static_cast<std::size_t>(__builtin_popcount(t)) < bound) out.push_back(t);
    return out;
}

double max_deviation(const BoolFunction& f, const FourierSpectrum& s) {
    const RealPointFunction p = iwht(s);
    double worst = 0.0;
    for (Mask x = 0; x < f.points(); ++x) worst = std::max(worst, std::abs(f(x) - p.table[x]));
    return worst;
}

}  // namespace

ChebyshevFit best_approximation(const BoolFunction& f, std::size_t d) {
    const std::size_t n = f.arity();
    const std::vector<Mask> basis = subsets_below(n, d + 1);
    const std::size_t k = basis.size();

    // Variables: c_T for T in basis (free), then t >= 0.
    lp::LinearProgram prog(k + 1);
    prog.maximize = false;
    prog.objective[k] = 1.0;
    for (std::size_t j = 0; j < k; ++j) prog.free[j] = true;
    for (Mask x = 0; x < f.points(); ++x) {
        std::vector<double> row(k + 1);
        for (std::size_t j = 0; j < k; ++j) row[j] = character_eval(basis[j], x);
        row[k] = -1.0;
        prog.add(row, lp::Sense::less_equal, f(x));  // p(x) - t <= f(x)
        for (std::size_t j = 0; j < k; ++j) row[j] = -row[j];
        prog.add(row, lp::Sense::less_equal, -f(x));  // -p(x) - t <= -f(x)
    }
    const lp::Solution sol = lp::solve(prog);
    ChebyshevFit fit;
    fit.diagnostics = {d, sol.status, sol.objective, sol.iterations, prog.num_vars(), prog.constraints.size()};
    if (sol.status != lp::Status::optimal)
        throw SolverError("Chebyshev LP at degree " + std::to_string(d) + " ended " + lp::to_string(sol.status));
    fit.error = sol.objective;
    fit.approximant.n = n;
    fit.approximant.coeffs.assign(f.points(), 0.0);
    for (std::size_t j = 0; j < k; ++j) fit.approximant.coeffs[basis[j]] = sol.x[j];
    return fit;
}

ApproxDegreeResult approx_degree(const BoolFunction& f, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in [0, 1)");
    ApproxDegreeResult r;
    if (epsilon == 0.0) {
        r.d = degree(f);
        r.approximant = wht(f);
        r.error = max_deviation(f, r.approximant);
        return r;
    }
    for (std::size_t d = 0; d <= f.arity(); ++d) {
        ChebyshevFit fit = best_approximation(f, d);
        r.lp_status.push_back(fit.diagnostics);
        if (fit.error <= epsilon + kFeasibilitySlack) {
            r.d = d;
            r.approximant = std::move(fit.approximant);
            r.error = max_deviation(f, r.approximant);
            return r;
        }
    }
    // Degree n always represents f exactly; getting here means the LP misbehaved.
    throw SolverError("no feasible degree found up to the arity");
}

DualWitness dual_polynomial_at(const BoolFunction& f, std::size_t d, double epsilon) {
    const std::size_t n = f.arity();
    const std::size_t N = f.points();
    DualWitness w;
    w.d = d;
    w.epsilon = epsilon;
    w.v.n = n;
    w.v.table.assign(N, 0.0);

    if (d == 0) {
        for (Mask x = 0; x < N; ++x) w.v.table[x] = f(x) / static_cast<double>(N);
    } else {
        // v = p - q with p, q >= 0.
        lp::LinearProgram prog(2 * N);
        prog.maximize = true;
        for (Mask x = 0; x < N; ++x) {
            prog.objective[x] = f(x);
            prog.objective[N + x] = -f(x);
        }
        prog.add(std::vector<double>(2 * N, 1.0), lp::Sense::less_equal, 1.0);
        for (Mask t : subsets_below(n, d)) {
            std::vector<double> row(2 * N);
            for (Mask x = 0; x < N; ++x) {
                row[x] = character_eval(t, x);
                row[N + x] = -row[x];
            }
            prog.add(std::move(row), lp::Sense::equal, 0.0);
        }
        const lp::Solution sol = lp::solve(prog);
        if (sol.status != lp::Status::optimal)
            throw SolverError("dual LP at degree " + std::to_string(d) + " ended " + lp::to_string(sol.status));
        for (Mask x = 0; x < N; ++x) w.v.table[x] = sol.x[x] - sol.x[N + x];
    }

    double l1 = 0.0;
    for (double a : w.v.table) l1 += std::abs(a);
    if (l1 > 0.0)
        for (double& a : w.v.table) a /= l1;
    w.l1 = 0.0;
    w.correlation = 0.0;
    for (Mask x = 0; x < N; ++x) {
        w.l1 += std::abs(w.v.table[x]);
        w.correlation += w.v.table[x] * f(x);
    }
    return w;
}

DualWitness dual_polynomial(const BoolFunction& f, double epsilon) {
    return dual_polynomial_at(f, approx_degree(f, epsilon).d, epsilon);
}

DualCheck verify_dual(const DualWitness& w, const BoolFunction& f) {
    if (w.v.n != f.arity() || w.v.table.size() != f.points())
        throw ArgumentError("witness and function arities differ");
    DualCheck c;
    double worst = 0.0;
    for (Mask t : subsets_below(f.arity(), w.d)) {
        double s = 0.0;
        for (Mask x = 0; x < f.points(); ++x) s += w.v.table[x] * character_eval(t, x);
        worst = std::max(worst, std::abs(s));
    }
    double l1 = 0.0, corr = 0.0;
    for (Mask x = 0; x < f.points(); ++x) {
        l1 += std::abs(w.v.table[x]);
        corr += w.v.table[x] * f(x);
    }
    c.orthogonality_margin = -worst;
    c.l1_margin = 1.0 - l1;
    c.correlation_margin = corr - w.epsilon;
    c.orthogonal = c.orthogonality_margin >= -1e-8;
    c.l1_ok = c.l1_margin >= -1e-9;
    c.correlated = c.correlation_margin >= -1e-8;
    return c;
}

}  // namespace commbound
