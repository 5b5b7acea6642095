#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "commbound/error.hpp"
#include "commbound/groupcomp.hpp"
#include "commbound/linalg.hpp"

namespace commbound::group {

namespace {

constexpr double kImagSlack = 1e-9;
constexpr const char* kConstantWarning = "additive O(1) constant of the theorem is not instantiated; main term only";

void check_function(const std::vector<double>& f, const CharacterTable& table) {
    if (f.size() != table.order) throw ArgumentError("class function needs one value per group element");
}

bool is_real(const CharacterTable& t, std::size_t i) {
    for (Element g = 0; g < t.order; ++g)
        if (std::abs(t(i, g).imag()) > 1e-15) return false;
    return true;
}

// ||[psi_i(g(x,y))]||, through the real path when the character is real.
double character_map_norm(const GroupMapMatrix& gmap, const CharacterTable& table, std::size_t i) {
    if (is_real(table, i)) {
        RealMatrix m(gmap.rows, gmap.cols);
        for (std::size_t x = 0; x < gmap.rows; ++x)
            for (std::size_t y = 0; y < gmap.cols; ++y) m(x, y) = table(i, gmap(x, y)).real();
        return spectrum(m).spectral_norm;
    }
    ComplexMatrix m(gmap.rows, gmap.cols);
    for (std::size_t x = 0; x < gmap.rows; ++x)
        for (std::size_t y = 0; y < gmap.cols; ++y) m(x, y) = table(i, gmap(x, y));
    return spectrum(m).spectral_norm;
}

double max_abs_value(const CharacterTable& table, std::size_t i) {
    double m = 0.0;
    for (Element g = 0; g < table.order; ++g) m = std::max(m, std::abs(table(i, g)));
    return m;
}

}  // namespace

void HardnessPartition::validate(std::size_t h) const {
    std::vector<int> seen(h, 0);
    for (std::size_t i : easy) {
        if (i >= h) throw ArgumentError("easy character index out of range");
        ++seen[i];
    }
    for (std::size_t i : hard) {
        if (i >= h) throw ArgumentError("hard character index out of range");
        ++seen[i];
    }
    for (int s : seen)
        if (s != 1) throw ArgumentError("easy and hard sets must partition the characters");
}

HardnessPartition degree_partition(const std::vector<CharacterTable>& components, std::size_t d) {
    std::vector<std::size_t> ids;
    std::size_t h = 1;
    for (const auto& c : components) {
        ids.push_back(c.identity());
        h *= c.h;
    }
    HardnessPartition p;
    for (std::size_t i = 0; i < h; ++i) {
        std::size_t ii = i, nontrivial = 0;
        for (std::size_t k = 0; k < components.size(); ++k) {
            if (ii % components[k].h != ids[k]) ++nontrivial;
            ii /= components[k].h;
        }
        (nontrivial < d ? p.easy : p.hard).push_back(i);
    }
    return p;
}

DistanceResult distance_to_easy(const std::vector<double>& f, const CharacterTable& table,
                                const std::vector<std::size_t>& easy) {
    check_function(f, table);
    const std::size_t k = easy.size();
    // Variables: Re c_i, Im c_i for each easy i (free), then delta >= 0.
    lp::LinearProgram prog(2 * k + 1);
    prog.maximize = false;
    prog.objective[2 * k] = 1.0;
    for (std::size_t v = 0; v < 2 * k; ++v) prog.free[v] = true;
    for (Element g = 0; g < table.order; ++g) {
        std::vector<double> re(2 * k + 1, 0.0), im(2 * k + 1, 0.0);
        for (std::size_t a = 0; a < k; ++a) {
            const Complex chi = table(easy[a], g);
            re[2 * a] = chi.real();
            re[2 * a + 1] = -chi.imag();
            im[2 * a] = chi.imag();
            im[2 * a + 1] = chi.real();
        }
        auto up = re, down = re;
        up[2 * k] = -1.0;  // Re p - delta <= f
        for (std::size_t v = 0; v < 2 * k; ++v) down[v] = -down[v];
        down[2 * k] = -1.0;  // -Re p - delta <= -f
        prog.add(up, lp::Sense::less_equal, f[g]);
        prog.add(down, lp::Sense::less_equal, -f[g]);
        auto neg_im = im;
        for (double& v : neg_im) v = -v;
        prog.add(im, lp::Sense::less_equal, kImagSlack);
        prog.add(neg_im, lp::Sense::less_equal, kImagSlack);
    }
    const lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal) throw SolverError("distance LP ended " + lp::to_string(sol.status));
    DistanceResult r;
    r.delta = sol.objective;
    r.iterations = sol.iterations;
    for (std::size_t a = 0; a < k; ++a) r.coefficients.emplace_back(sol.x[2 * a], sol.x[2 * a + 1]);
    return r;
}

std::vector<Complex> character_coefficients(const std::vector<Complex>& h, const CharacterTable& table) {
    if (h.size() != table.order) throw ArgumentError("function needs one value per group element");
    std::vector<Complex> out(table.h, 0.0);
    for (std::size_t i = 0; i < table.h; ++i) {
        for (Element g = 0; g < table.order; ++g) out[i] += table(i, g) * std::conj(h[g]);
        out[i] /= static_cast<double>(table.order);
    }
    return out;
}

DualH dual_h(const std::vector<double>& f, const CharacterTable& table, const std::vector<std::size_t>& easy) {
    check_function(f, table);
    const std::size_t G = table.order;
    DualH out;
    out.delta = distance_to_easy(f, table, easy).delta;

    // h = p - q real, p, q >= 0.
    lp::LinearProgram prog(2 * G);
    for (Element g = 0; g < G; ++g) {
        prog.objective[g] = f[g];
        prog.objective[G + g] = -f[g];
    }
    prog.add(std::vector<double>(2 * G, 1.0), lp::Sense::less_equal, 1.0);
    for (std::size_t i : easy) {
        std::vector<double> re(2 * G), im(2 * G);
        bool has_im = false;
        for (Element g = 0; g < G; ++g) {
            const Complex chi = std::conj(table(i, g));
            re[g] = chi.real();
            re[G + g] = -chi.real();
            im[g] = chi.imag();
            im[G + g] = -chi.imag();
            has_im = has_im || std::abs(chi.imag()) > 1e-15;
        }
        prog.add(std::move(re), lp::Sense::equal, 0.0);
        if (has_im) prog.add(std::move(im), lp::Sense::equal, 0.0);
    }
    const lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal) throw SolverError("dual LP ended " + lp::to_string(sol.status));

    out.h.assign(G, 0.0);
    double mass = 0.0;
    for (Element g = 0; g < G; ++g) {
        out.h[g] = sol.x[g] - sol.x[G + g];
        mass += std::abs(out.h[g]);
    }
    if (mass > 0.0)
        for (auto& v : out.h) v *= 2.0 / mass;

    Complex corr = 0.0;
    for (Element g = 0; g < G; ++g) {
        out.l1 += std::abs(out.h[g]);
        corr += f[g] * std::conj(out.h[g]);
    }
    out.correlation = std::abs(corr);
    const auto coeffs = character_coefficients(out.h, table);
    for (std::size_t i : easy) out.max_easy_coefficient = std::max(out.max_easy_coefficient, std::abs(coeffs[i]));
    out.hard_ok = out.max_easy_coefficient <= 1e-9;
    out.l1_ok = out.l1 <= 2.0 + 1e-9;
    out.correlation_ok = out.correlation >= 2.0 * out.delta - 1e-8;
    out.strictly_above_delta = out.correlation > out.delta;

    // A real h only reaches the distance when the easy span is closed under conjugation.
    for (std::size_t i : easy) {
        bool closed = false;
        for (std::size_t j : easy) {
            bool conj = true;
            for (Element g = 0; g < G && conj; ++g) conj = std::abs(table(j, g) - std::conj(table(i, g))) <= 1e-9;
            if (conj) {
                closed = true;
                break;
            }
        }
        if (!closed) {
            out.warnings.push_back("easy set is not closed under conjugation; real h may fall short of 2 delta");
            break;
        }
    }
    return out;
}

BoundReport general_bound(const GroupMapMatrix& gmap, const std::vector<double>& f, const CharacterTable& table,
                          const HardnessPartition& partition, double epsilon) {
    check_function(f, table);
    if (gmap.order != table.order) throw ArgumentError("group map and character table orders differ");
    partition.validate(table.h);
    BoundReport rep;
    rep.theorem = "general";
    rep.warnings.push_back(kConstantWarning);
    if (partition.hard.empty()) {
        rep.reason = "hard set is empty";
        return rep;
    }
    const auto reg = regularity_check(gmap);
    if (!reg.regular) {
        rep.reason = "regularity fails: " + reg.reason;
        return rep;
    }
    const auto orth = orthogonality_general(gmap, table, partition.hard);
    if (!orth.passed()) {
        rep.reason = "orthogonality fails (max row sum " + std::to_string(orth.max_row_sum) + ", max column sum " +
                     std::to_string(orth.max_col_sum) + ")";
        return rep;
    }
    const double delta = partition.delta ? *partition.delta : distance_to_easy(f, table, partition.easy).delta;
    const double gap = delta - 2.0 * epsilon;
    rep.intermediates = {{"delta", delta}, {"epsilon", epsilon}, {"delta_minus_2eps", gap}};
    if (gap <= 0.0) {
        rep.reason = "delta - 2 epsilon = " + std::to_string(gap) + " is not positive";
        return rep;
    }
    double denom = 0.0;
    for (std::size_t i : partition.hard)
        denom = std::max(denom, max_abs_value(table, i) * character_map_norm(gmap, table, i));
    const double mn = static_cast<double>(gmap.rows * gmap.cols);
    const double main = std::log2(std::sqrt(mn) / denom);
    rep.intermediates.insert(rep.intermediates.end(), {{"M", static_cast<double>(gmap.rows)},
                                                       {"N", static_cast<double>(gmap.cols)},
                                                       {"hard_count", static_cast<double>(partition.hard.size())},
                                                       {"max_denominator", denom},
                                                       {"log2_delta_minus_2eps", std::log2(gap)},
                                                       {"full_value", main + std::log2(gap)}});
    rep.applicable = true;
    rep.main_term = main;
    return rep;
}

ProductDegreeResult product_approx_degree(const std::vector<double>& f,
                                          const std::vector<CharacterTable>& components, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in [0, 1)");
    const CharacterTable whole = product_table(components);
    check_function(f, whole);
    ProductDegreeResult r;
    for (std::size_t d = 0; d <= components.size(); ++d) {
        const auto part = degree_partition(components, d + 1);
        const double delta = distance_to_easy(f, whole, part.easy).delta;
        r.deltas.push_back(delta);
        if (delta <= epsilon + 1e-9) {
            r.d = d;
            r.delta = delta;
            return r;
        }
    }
    throw SolverError("full character span does not reach the function; table is not a basis");
}

BoundReport block_group_bound(const std::vector<GroupMapMatrix>& gmaps, const std::vector<double>& f,
                              const std::vector<CharacterTable>& tables) {
    if (gmaps.size() != tables.size() || gmaps.empty())
        throw ArgumentError("need one character table per block, at least one block");
    const std::size_t t = gmaps.size();
    if (t > 20) throw ResourceError("block_group_bound enumerates 2^t block subsets; t = " + std::to_string(t));
    BoundReport rep;
    rep.theorem = "block-group";
    rep.warnings.push_back(kConstantWarning);

    std::vector<double> term(t, std::numeric_limits<double>::infinity());
    for (std::size_t b = 0; b < t; ++b) {
        if (gmaps[b].order != tables[b].order)
            throw ArgumentError("block " + std::to_string(b + 1) + ": map and table orders differ");
        // Hard characters of the product carry identity components, so the
        // block condition covers every pair of its characters.
        const std::size_t id = tables[b].identity();
        std::vector<std::size_t> all, hard;
        for (std::size_t i = 0; i < tables[b].h; ++i) {
            all.push_back(i);
            if (i != id) hard.push_back(i);
        }
        if (!orthogonality_general(gmaps[b], tables[b], all).passed()) {
            rep.reason = "block " + std::to_string(b + 1) + " fails its orthogonality condition";
            return rep;
        }
        const double root = std::sqrt(static_cast<double>(gmaps[b].rows * gmaps[b].cols));
        for (std::size_t i : hard) {
            const double norm = character_map_norm(gmaps[b], tables[b], i);
            term[b] = std::min(term[b], std::log2(root / (static_cast<double>(tables[b].degrees[i]) * norm)));
        }
    }
    const std::size_t d = product_approx_degree(f, tables, 1.0 / 3).d;

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_size = 0;
    for (std::size_t s = 0; s < (std::size_t{1} << t); ++s) {
        if (static_cast<std::size_t>(__builtin_popcountll(s)) < d) continue;
        double sum = 0.0;
        for (std::size_t b = 0; b < t; ++b)
            if ((s >> b) & 1u) sum += term[b];
        if (sum < best) {
            best = sum;
            best_size = static_cast<std::size_t>(__builtin_popcountll(s));
        }
    }
    rep.intermediates = {{"d", static_cast<double>(d)}, {"t", static_cast<double>(t)}};
    for (std::size_t b = 0; b < t; ++b) rep.intermediates.emplace_back("block_" + std::to_string(b + 1) + "_term", term[b]);
    rep.intermediates.emplace_back("chosen_set_size", static_cast<double>(best_size));
    if (!std::isfinite(best)) {
        rep.reason = "some block group has no non-identity character";
        return rep;
    }
    if (d == t) rep.warnings.push_back("deg_{1/3}(f) = t: the minimum runs over the full block set only");
    rep.applicable = true;
    rep.main_term = best;
    return rep;
}

}  // namespace commbound::group
