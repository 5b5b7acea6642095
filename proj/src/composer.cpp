#include "commbound/composer.hpp"

#include <cmath>
#include <string>

#include "commbound/error.hpp"
#include "commbound/linalg.hpp"

namespace commbound {

namespace {

std::size_t checked_power(std::size_t base, std::size_t n, std::size_t cap, const char* what) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (out > cap / base)
            throw ResourceError(std::string(what) + " would need " + std::to_string(base) + "^" + std::to_string(n) +
                                " entries, over the cap of " + std::to_string(cap));
        out *= base;
    }
    return out;
}

// Throws unless |X|^n * |Y|^n fits in the cap.
std::pair<std::size_t, std::size_t> composed_dims(const SignMatrix& g, std::size_t n, std::size_t cap) {
    checked_power(g.size(), n, cap, "composed matrix");
    std::size_t r = 1, c = 1;
    for (std::size_t i = 0; i < n; ++i) {
        r *= g.rows();
        c *= g.cols();
    }
    return {r, c};
}

}  // namespace

Mask block_point(const SignMatrix& g, std::size_t n, std::size_t row, std::size_t col) {
    Mask z = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t xr = row % g.rows(), yc = col % g.cols();
        row /= g.rows();
        col /= g.cols();
        if (g(xr, yc) < 0) z |= Mask{1} << (n - 1 - k);
    }
    return z;
}

SignMatrix char_compose(Mask subset, const SignMatrix& g, std::size_t n, std::size_t entry_cap) {
    if (n > kMaxArity || (n < 32 && (subset >> n) != 0)) throw ArgumentError("subset does not fit in n blocks");
    if (n == 0) return SignMatrix::all_ones(1, 1);
    composed_dims(g, n, entry_cap);
    const SignMatrix j = SignMatrix::all_ones(g.rows(), g.cols());
    SignMatrix out = (subset & 1u) ? g : j;
    for (std::size_t i = 1; i < n; ++i) out = tensor(out, (subset >> i) & 1u ? g : j);
    return out;
}

Composition compose_block(const BoolFunction& f, const SignMatrix& g, std::size_t entry_cap) {
    const std::size_t n = f.arity();
    const auto [rows, cols] = composed_dims(g, n, entry_cap);

    std::vector<std::int8_t> direct(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) direct[r * cols + c] = static_cast<std::int8_t>(f(block_point(g, n, r, c)));

    // 2^n M = sum_T (2^n f_T) M_T, exactly.
    const std::vector<std::int64_t> coeff = integer_transform(f);
    std::vector<std::int64_t> acc(rows * cols, 0);
    for (Mask t = 0; t < coeff.size(); ++t) {
        if (coeff[t] == 0) continue;
        const SignMatrix mt = char_compose(t, g, n, entry_cap);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += coeff[t] * mt.entries()[k];
    }
    const std::int64_t scale = std::int64_t{1} << n;
    for (std::size_t k = 0; k < acc.size(); ++k)
        if (acc[k] != scale * direct[k]) throw SolverError("Fourier and pointwise compositions disagree");

    return {f, g, n, SignMatrix(rows, cols, std::move(direct))};
}

OrthogonalityReport verify_orthogonality(const SignMatrix& g, std::size_t n, std::size_t entry_cap) {
    OrthogonalityReport rep;
    std::vector<IntMatrix> mats;
    for (Mask t = 0; t < (Mask{1} << n); ++t) mats.push_back(char_compose(t, g, n, entry_cap).to_int());
    auto record = [&](const IntMatrix& p, Mask s, Mask t) {
        for (std::int64_t v : p.data()) {
            if (std::llabs(v) > rep.max_violation) {
                rep.max_violation = std::llabs(v);
                rep.worst_pair = std::make_pair(s, t);
            }
        }
    };
    for (Mask t = 0; t < mats.size(); ++t) {
        for (Mask s = t + 1; s < mats.size(); ++s) {
            // The (s, t) products are transposes of these.
            record(multiply(mats[t], mats[s].transpose()), t, s);
            record(multiply(mats[t].transpose(), mats[s]), t, s);
            ++rep.pairs_checked;
        }
    }
    rep.orthogonal = rep.max_violation == 0;
    return rep;
}

RankTheoremReport verify_rank_theorem(const BoolFunction& f, const SignMatrix& g, std::size_t entry_cap) {
    if (!balance_check(g).strongly_balanced)
        throw PreconditionError("rank formula needs a strongly balanced inner matrix");
    RankTheoremReport rep;
    rep.rank_g = exact_rank(g);
    const std::vector<std::int64_t> coeff = integer_transform(f);
    for (Mask t = 0; t < coeff.size(); ++t) {
        if (coeff[t] == 0) continue;
        std::uint64_t term = 1;
        for (int i = 0; i < __builtin_popcount(t); ++i) term *= rep.rank_g;
        rep.formula += term;
    }
    rep.exact = exact_rank(compose_block(f, g, entry_cap).matrix);
    rep.equal = rep.formula == rep.exact;
    return rep;
}

WitnessMatrix build_witness(const DualWitness& w, const BoolFunction& f, const SignMatrix& g,
                            const std::optional<RealMatrix>& mu, std::size_t entry_cap) {
    const std::size_t n = w.v.n;
    if (f.arity() != n) throw ArgumentError("witness and outer function arities differ");
    if (mu) {
        if (mu->rows() != g.rows() || mu->cols() != g.cols())
            throw PreconditionError("distribution and inner matrix dimensions differ");
        double total = 0.0, bias = 0.0;
        for (std::size_t x = 0; x < g.rows(); ++x) {
            for (std::size_t y = 0; y < g.cols(); ++y) {
                const double p = (*mu)(x, y);
                if (!(p >= 0.0)) throw PreconditionError("distribution has a negative entry");
                total += p;
                bias += p * g(x, y);
            }
        }
        if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("distribution does not sum to 1");
        if (std::abs(bias) > 1e-9) throw PreconditionError("distribution is not balanced with respect to g");
    } else if (!balance_check(g).strongly_balanced) {
        throw PreconditionError("witness without a distribution needs a strongly balanced inner matrix");
    }

    const auto [rows, cols] = composed_dims(g, n, entry_cap);
    WitnessMatrix out;
    out.source = w;
    out.mu = mu;
    out.B = RealMatrix(rows, cols);
    const double two_n = std::ldexp(1.0, static_cast<int>(n));
    const double uniform_scale = two_n / std::pow(static_cast<double>(g.size()), static_cast<double>(n));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Mask z = block_point(g, n, r, c);
            double value = w.v.table[z];
            if (mu) {
                double weight = two_n;
                std::size_t rr = r, cc = c;
                for (std::size_t k = 0; k < n; ++k) {
                    weight *= (*mu)(rr % g.rows(), cc % g.cols());
                    rr /= g.rows();
                    cc /= g.cols();
                }
                value *= weight;
            } else {
                value *= uniform_scale;
            }
            out.B(r, c) = value;
            out.l1 += std::abs(value);
            out.correlation += value * f(z);
        }
    }
    out.spectral_norm = spectrum(out.B).spectral_norm;
    out.l1_ok = std::abs(out.l1 - 1.0) <= 1e-9;
    out.correlation_ok = out.correlation >= w.epsilon - 1e-8;
    return out;
}

double character_norm(Mask subset, const SignMatrix& g, std::size_t n) {
    const double ng = spectrum(g).spectral_norm;
    const double nj = std::sqrt(static_cast<double>(g.size()));
    const int k = __builtin_popcount(subset);
    return std::pow(ng, k) * std::pow(nj, static_cast<double>(n) - k);
}

double witness_norm_bound(double norm_g, std::size_t size_g, std::size_t d, std::size_t n) {
    const double s = static_cast<double>(size_g);
    return std::pow(norm_g / std::sqrt(s), static_cast<double>(d)) * std::pow(s, -0.5 * static_cast<double>(n));
}

}  // namespace commbound
