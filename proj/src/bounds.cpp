#include "commbound/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "commbound/approx.hpp"
#include "commbound/error.hpp"
#include "commbound/linalg.hpp"

namespace commbound {

namespace {

constexpr const char* kConstantWarning = "additive O(1) constant of the theorem is not instantiated; main term only";

RealMatrix validated_distribution(RealMatrix p) {
    double total = 0.0;
    for (double v : p.data()) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("distribution entries must be finite and nonnegative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("distribution must sum to 1 (got " + std::to_string(total) + ")");
    return p;
}

}  // namespace

DistributionMatrix::DistributionMatrix(RealMatrix p) : p_(validated_distribution(std::move(p))) {
    if (p_.size() == 0) throw ArgumentError("distribution must be nonempty");
}

DistributionMatrix DistributionMatrix::uniform(std::size_t rows, std::size_t cols) {
    return DistributionMatrix(RealMatrix(rows, cols, 1.0 / static_cast<double>(rows * cols)));
}

std::size_t worker_threads() {
    if (const char* env = std::getenv("COMMBOUND_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double discrepancy(const SignMatrix& a, const DistributionMatrix& p, std::size_t cap) {
    if (a.rows() != p.rows() || a.cols() != p.cols()) throw ArgumentError("matrix and distribution dimensions differ");
    const bool flip = a.cols() < a.rows();
    const std::size_t m = flip ? a.cols() : a.rows();
    const std::size_t k = flip ? a.rows() : a.cols();
    if (m > cap)
        throw ResourceError("discrepancy enumeration over 2^" + std::to_string(m) + " subsets exceeds the cap of 2^" +
                            std::to_string(cap) + "; ||A||/sqrt(size) is an upper bound");

    // w[i][j] = A o P with i the enumerated side.
    std::vector<double> w(m * k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j)
            w[i * k + j] = flip ? a(j, i) * p(j, i) : a(i, j) * p(i, j);

    // Chunks are fixed by the size alone, so the rounding path (and hence the
    // result) is the same for any number of workers.
    const std::size_t high = std::min<std::size_t>(m, 8);
    const std::size_t low = m - high;
    const std::size_t chunks = std::size_t{1} << high;
    std::vector<double> best(chunks, 0.0);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        std::vector<double> col(k);
        for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
            std::fill(col.begin(), col.end(), 0.0);
            for (std::size_t b = 0; b < high; ++b)
                if ((c >> b) & 1u)
                    for (std::size_t j = 0; j < k; ++j) col[j] += w[(low + b) * k + j];
            std::vector<bool> in(low, false);
            double local = 0.0;
            for (std::size_t i = 0; i < (std::size_t{1} << low); ++i) {
                if (i > 0) {
                    const std::size_t r = static_cast<std::size_t>(__builtin_ctzll(i));
                    const double s = in[r] ? -1.0 : 1.0;
                    in[r] = !in[r];
                    for (std::size_t j = 0; j < k; ++j) col[j] += s * w[r * k + j];
                }
                double pos = 0.0, neg = 0.0;
                for (double v : col) (v > 0 ? pos : neg) += v;
                local = std::max({local, pos, -neg});
            }
            best[c] = local;
        }
    };
    const std::size_t workers = std::min(worker_threads(), chunks);
    if (workers <= 1 || m < 12) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return *std::max_element(best.begin(), best.end());
}

ShaltielReport shaltiel_verify(const SignMatrix& a, std::size_t cap) {
    ShaltielReport r;
    r.normalized_norm = spectrum(a).spectral_norm / std::sqrt(static_cast<double>(a.size()));
    r.lhs = std::pow(r.normalized_norm, 3) / 108.0;
    r.disc = discrepancy(a, DistributionMatrix::uniform(a.rows(), a.cols()), cap);
    r.holds = r.lhs <= r.disc + 1e-9;
    return r;
}

Interval gamma2_star_interval(const SignMatrix& a, const DistributionMatrix& p, std::size_t cap) {
    const double d = discrepancy(a, p, cap);
    return {d, kGrothendieckUpper * d};
}

SpectralDiscReport verify_spectral_disc(const SignMatrix& a, const SpectralDiscCert& cert) {
    if (cert.rows.empty() || cert.cols.empty()) throw ArgumentError("certificate index sets must be nonempty");
    for (auto r : cert.rows)
        if (r >= a.rows()) throw ArgumentError("certificate row index out of range");
    for (auto c : cert.cols)
        if (c >= a.cols()) throw ArgumentError("certificate column index out of range");
    if (cert.mu.rows() != cert.rows.size() || cert.mu.cols() != cert.cols.size())
        throw ArgumentError("certificate distribution does not match the submatrix");
    const DistributionMatrix mu(cert.mu);

    const SignMatrix sub = a.submatrix(cert.rows, cert.cols);
    RealMatrix weighted(sub.rows(), sub.cols()), magnitude(sub.rows(), sub.cols());
    SpectralDiscReport rep;
    for (std::size_t i = 0; i < sub.rows(); ++i) {
        for (std::size_t j = 0; j < sub.cols(); ++j) {
            weighted(i, j) = sub(i, j) * mu(i, j);
            magnitude(i, j) = mu(i, j);
            rep.balance += weighted(i, j);
        }
    }
    const double root = std::sqrt(static_cast<double>(sub.size()));
    rep.signed_norm = spectrum(weighted).spectral_norm;
    rep.abs_norm = spectrum(magnitude).spectral_norm;
    rep.balanced = std::abs(rep.balance) <= 1e-9;
    rep.signed_ok = rep.signed_norm <= cert.r / root + 1e-9;
    rep.abs_ok = rep.abs_norm <= (1.0 + cert.r) / root + 1e-9;
    rep.minimal_r = std::max({0.0, root * rep.signed_norm, root * rep.abs_norm - 1.0});
    return rep;
}

TraceLowerBound approx_trace_lower(const SignMatrix& a, const RealMatrix& b, double epsilon) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("sign matrix and witness dimensions differ");
    const double norm = spectrum(b).spectral_norm;
    if (!(norm > 0.0)) throw ArgumentError("witness has zero spectral norm");
    TraceLowerBound t;
    t.numerator = inner_product(a.to_real(), b) - epsilon * l1_norm(b);
    t.trace_lb = t.numerator / norm;
    t.gamma2_lb = t.trace_lb / std::sqrt(static_cast<double>(a.size()));
    t.applicable = t.numerator > 0.0;
    if (t.applicable) t.qcc_main_term = std::log2(t.gamma2_lb);
    return t;
}

TraceLowerBound approx_trace_lower(const SignMatrix& a, const WitnessMatrix& b, double epsilon) {
    return approx_trace_lower(a, b.B, epsilon);
}

std::optional<double> BoundReport::intermediate(const std::string& name) const {
    for (const auto& [k, v] : intermediates)
        if (k == name) return v;
    return std::nullopt;
}

BoundReport sherstov_bound(const BoolFunction& f, const SignMatrix& g, double epsilon0) {
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw ArgumentError("epsilon0 must lie in (0, 1)");
    BoundReport rep;
    rep.theorem = "sherstov";
    const auto bal = balance_check(g);
    if (!bal.strongly_balanced) {
        rep.reason = "inner matrix is not strongly balanced";
        return rep;
    }
    const std::size_t d = approx_degree(f, epsilon0).d;
    const double norm = spectrum(g).spectral_norm;
    const std::size_t rank = exact_rank(g);
    const double size = static_cast<double>(g.size());
    // A rank-1 sign matrix has norm exactly sqrt(size); avoid a rounding residue.
    const double ratio_log = rank == 1 ? 0.0 : std::log2(std::sqrt(size) / norm);
    rep.intermediates = {{"d", static_cast<double>(d)},
                         {"epsilon0", epsilon0},
                         {"norm_g", norm},
                         {"size_g", size},
                         {"rank_g", static_cast<double>(rank)},
                         {"log2_ratio", ratio_log}};
    rep.applicable = true;
    rep.main_term = d == 0 ? 0.0 : static_cast<double>(d) * ratio_log;
    if (rank == 1) rep.warnings.push_back("inner matrix has rank 1: ||M_g|| = sqrt(size) and the main term is 0");
    rep.warnings.push_back(kConstantWarning);
    return rep;
}

BoundReport disc_bound(const BoolFunction& f, const SignMatrix& g, std::size_t cap) {
    BoundReport rep;
    rep.theorem = "disc";
    if (!balance_check(g).strongly_balanced) {
        rep.reason = "inner matrix is not strongly balanced";
        return rep;
    }
    const std::size_t d = approx_degree(f, 1.0 / 3).d;
    const double disc = discrepancy(g, DistributionMatrix::uniform(g.rows(), g.cols()), cap);
    const double inner = std::log2(1.0 / disc) - 7.0;
    rep.intermediates = {{"d", static_cast<double>(d)}, {"disc_g", disc}, {"log2_inv_disc_minus_7", inner}};
    rep.applicable = true;
    rep.main_term = d == 0 ? 0.0 : static_cast<double>(d) * inner / 3.0;
    if (inner <= 0.0) rep.warnings.push_back("disc_U(g) >= 2^-7: the bound is vacuous");
    rep.warnings.push_back(kConstantWarning);
    return rep;
}

BoundReport shizhu_bound(const BoolFunction& f, const SignMatrix& g, const DistributionMatrix& mu, double epsilon0,
                         std::size_t cap) {
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw ArgumentError("epsilon0 must lie in (0, 1)");
    if (mu.rows() != g.rows() || mu.cols() != g.cols())
        throw PreconditionError("distribution and inner matrix dimensions differ");
    double bias = 0.0;
    for (std::size_t x = 0; x < g.rows(); ++x)
        for (std::size_t y = 0; y < g.cols(); ++y) bias += mu(x, y) * g(x, y);
    if (std::abs(bias) > 1e-9) throw PreconditionError("distribution is not balanced with respect to g");

    BoundReport rep;
    rep.theorem = "shizhu";
    const std::size_t n = f.arity();
    if (n == 0) throw ArgumentError("outer function needs at least one input");
    const std::size_t d = approx_degree(f, epsilon0).d;
    const Interval gamma = gamma2_star_interval(g, mu, cap);
    const double threshold = static_cast<double>(d) / (2.0 * std::numbers::e * static_cast<double>(n));
    rep.intermediates = {{"d", static_cast<double>(d)},
                         {"n", static_cast<double>(n)},
                         {"epsilon0", epsilon0},
                         {"gamma2_star_lo", gamma.lo},
                         {"gamma2_star_hi", gamma.hi},
                         {"threshold", threshold},
                         {"gap", gamma.hi - threshold}};
    rep.warnings.push_back("assumes gamma_2^*(mu) <= 1 for the distribution");
    rep.warnings.push_back(kConstantWarning);
    if (gamma.hi <= threshold) {
        rep.applicable = true;
        rep.main_term = static_cast<double>(d);
    } else {
        rep.reason = "K_G * disc_mu(g) = " + std::to_string(gamma.hi) + " exceeds d/(2en) = " + std::to_string(threshold);
    }
    return rep;
}

}  // namespace commbound
