#include "commbound/suites.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "commbound/approx.hpp"
#include "commbound/bounds.hpp"
#include "commbound/composer.hpp"
#include "commbound/error.hpp"
#include "commbound/groupcomp.hpp"
#include "commbound/linalg.hpp"
#include "commbound/pattern.hpp"

namespace commbound::suites {

void SuiteResult::check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (messages.size() < 10) messages.push_back(what);
}

namespace {

using group::AbelianGroupSpec;
using group::CharacterTable;
using group::GroupMapMatrix;
using group::PairMultiset;

std::string describe(const BoolFunction& f) { return format_truth_table(f); }

SignMatrix random_sign(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::vector<std::int8_t> e(rows * cols);
    for (auto& v : e) v = (rng() & 1u) ? -1 : 1;
    return SignMatrix(rows, cols, std::move(e));
}

std::vector<SignMatrix> all_strongly_balanced_4x4() {
    std::vector<SignMatrix> out;
    for (std::uint32_t code = 0; code < (1u << 16); ++code) {
        std::vector<std::int8_t> e(16);
        for (int k = 0; k < 16; ++k) e[k] = (code >> k) & 1u ? -1 : 1;
        SignMatrix m(4, 4, std::move(e));
        if (balance_check(m).strongly_balanced) out.push_back(std::move(m));
    }
    return out;
}

SuiteResult rank_formula(std::uint64_t seed) {
    SuiteResult r{"rank-formula", "rank of f o g^n equals sum over f_T != 0 of rank(g)^|T|", 0, 0, {}, {}};
    const auto gs = all_strongly_balanced_4x4();
    r.metrics.emplace_back("strongly_balanced_4x4", static_cast<double>(gs.size()));
    auto run_one = [&](const BoolFunction& f, const SignMatrix& g, const std::string& label) {
        const auto rep = verify_rank_theorem(f, g);
        r.check(rep.equal, label + ": formula " + std::to_string(rep.formula) + " vs rank " + std::to_string(rep.exact));
    };
    for (std::size_t k = 0; k < gs.size(); ++k)
        for (std::uint64_t code = 0; code < 16; ++code)
            run_one(BoolFunction::from_code(2, code), gs[k], "4x4 #" + std::to_string(k) + " f=" + std::to_string(code));
    for (const auto& [name, g] : {std::pair{"S4", named::s4()}, std::pair{"S6", named::s6()}})
        for (std::uint64_t code = 0; code < 16; ++code)
            run_one(BoolFunction::from_code(2, code), g, std::string(name) + " f=" + std::to_string(code));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 20; ++k) {
        const auto f = BoolFunction::from_code(3, rng() % 256);
        run_one(f, named::s4(), "S4 n=3 " + describe(f));
    }
    return r;
}

SuiteResult s6_reproduction(std::uint64_t) {
    SuiteResult r{"s6", "S6 is strongly balanced, rank >= 2, S4-free; the 6x6 search finds such matrices", 0, 0, {}, {}};
    const auto s6 = named::s6();
    const auto s4 = named::s4();
    r.check(balance_check(s6).strongly_balanced, "S6 strongly balanced");
    const std::size_t rank = exact_rank(s6);
    r.metrics.emplace_back("rank_s6", static_cast<double>(rank));
    r.check(rank >= 2, "rank(S6) >= 2");
    r.check(!contains_pattern(s6, s4, PatternMode::up_to_permutation).found, "S6 is S4-free up to permutation");
    r.check(!contains_pattern(s6, s4, PatternMode::ordered).found, "S6 is S4-free in order");
    BalancedSearchConstraints c;
    c.min_rank = 2;
    c.forbidden = s4;
    const auto found = search_strongly_balanced(6, 6, c);
    r.metrics.emplace_back("search_results", static_cast<double>(found.size()));
    r.check(!found.empty(), "search(6, 6, rank >= 2, S4-free) is nonempty");
    bool has_s6 = false;
    const auto canon = canonical_form(s6);
    for (const auto& m : found) {
        has_s6 = has_s6 || m == canon;
        r.check(balance_check(m).strongly_balanced && exact_rank(m) >= 2 && !contains_pattern(m, s4).found,
                "search result satisfies its constraints");
    }
    r.check(has_s6, "search finds the class of S6");
    return r;
}

SuiteResult dual_witness(std::uint64_t) {
    SuiteResult r{"dual-witness", "dual polynomials at eps = 1/3 pass verification; deg(PARITY_n) = n", 0, 0, {}, {}};
    double worst = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (1u << n)); ++code) {
            const auto f = BoolFunction::from_code(n, code);
            const auto w = dual_polynomial(f, 1.0 / 3);
            const auto c = verify_dual(w, f);
            worst = std::min({worst, c.orthogonality_margin, c.l1_margin, c.correlation_margin});
            r.check(c.passed() && c.orthogonality_margin >= -1e-8 && c.l1_margin >= -1e-8 &&
                        c.correlation_margin >= -1e-8,
                    "witness for " + describe(f));
        }
    }
    r.metrics.emplace_back("worst_margin", worst);
    for (std::size_t n = 1; n <= 4; ++n) {
        const std::size_t d = approx_degree(BoolFunction::parity(n), 1.0 / 3).d;
        r.check(d == n, "deg_{1/3}(PARITY_" + std::to_string(n) + ") = " + std::to_string(d));
    }
    return r;
}

SuiteResult witness_spectral(std::uint64_t) {
    SuiteResult r{"witness-spectral", "witness matrices have unit l1, correlation >= eps and the spectral bound", 0, 0,
                  {}, {}};
    double slack = 1e300;
    for (const auto& [gname, g] : {std::pair{"S4", named::s4()}, std::pair{"S6", named::s6()}}) {
        const double ng = spectrum(g).spectral_norm;
        for (const auto& [fname, f] : {std::pair{"PARITY_2", BoolFunction::parity(2)},
                                       std::pair{"AND_2", BoolFunction::and_fn(2)}}) {
            const auto w = dual_polynomial(f, 1.0 / 3);
            const auto b = build_witness(w, f, g);
            const double bound = witness_norm_bound(ng, g.size(), w.d, f.arity());
            const std::string label = std::string(fname) + " o " + gname;
            r.check(std::abs(b.l1 - 1.0) <= 1e-9, label + ": ||B||_1 = " + std::to_string(b.l1));
            r.check(b.correlation >= 1.0 / 3 - 1e-8, label + ": <M,B> = " + std::to_string(b.correlation));
            r.check(b.spectral_norm <= bound + 1e-8, label + ": ||B|| above bound");
            slack = std::min(slack, bound - b.spectral_norm);
        }
    }
    r.metrics.emplace_back("min_bound_slack", slack);
    return r;
}

SuiteResult sherstov_value(std::uint64_t) {
    SuiteResult r{"sherstov-value", "sherstov_bound(PARITY_2, S4, 1/3) = 1", 0, 0, {}, {}};
    const auto rep = sherstov_bound(BoolFunction::parity(2), named::s4(), 1.0 / 3);
    r.check(rep.applicable && rep.main_term.has_value(), "bound applicable");
    const double v = rep.main_term.value_or(NAN);
    r.metrics.emplace_back("main_term", v);
    r.check(std::abs(v - 1.0) <= 1e-6, "main term " + std::to_string(v));
    r.check(rep.intermediate("d") == 2.0, "d = 2");
    return r;
}

SuiteResult measure_inequalities(std::uint64_t seed) {
    SuiteResult r{"measure-inequalities", "disc <= ||A||/sqrt(size) and Shaltiel's inequality on random matrices", 0,
                  0, {}, {}};
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 200; ++k) {
        const std::size_t rows = 1 + rng() % 10, cols = 1 + rng() % 10;
        const auto a = random_sign(rng, rows, cols);
        const auto s = shaltiel_verify(a);
        const std::string label = "#" + std::to_string(k) + " " + std::to_string(rows) + "x" + std::to_string(cols);
        r.check(s.disc <= s.normalized_norm + 1e-9, label + ": disc above spectral bound");
        r.check(s.lhs <= s.disc + 1e-9, label + ": Shaltiel inequality fails");
    }
    return r;
}

PairMultiset random_multiset(std::mt19937_64& rng, const AbelianGroupSpec& g, bool closure) {
    PairMultiset t;
    const std::size_t k = 1 + rng() % 4;
    for (std::size_t i = 0; i < k; ++i) {
        const group::Element s = rng() % g.order(), u = rng() % g.order();
        const std::size_t mult = 1 + rng() % 3;
        if (closure)
            for (group::Element x = 0; x < g.order(); ++x) t.add(g.add(x, s), g.add(x, u), mult);
        else
            t.add(s, u, mult);
    }
    return t;
}

SuiteResult group_props(std::uint64_t seed) {
    SuiteResult r{"group-props", "invariance iff vanishing cross sums; T' statements agree; diagonal invariance "
                                 "gives regularity; 2x2-block degeneration",
                  0, 0, {}, {}};
    std::mt19937_64 rng(seed);
    std::size_t invariant = 0;
    for (const auto& g : {AbelianGroupSpec({3}), AbelianGroupSpec({4}), AbelianGroupSpec({2, 2})}) {
        const auto table = group::characters_abelian(g);
        for (int k = 0; k < 500; ++k) {
            const auto t = random_multiset(rng, g, rng() & 1u);
            const bool inv = group::g_invariant(t, g);
            const double sums = group::orthogonality_sums(t, table);
            r.check(inv == (sums <= 1e-8 * static_cast<double>(t.total())), "invariance vs cross sums");
            r.check(group::tprime_check(t, table).agree(), "T' statements 1 and 3 disagree");
            invariant += inv;
        }
    }
    r.metrics.emplace_back("invariant_multisets", static_cast<double>(invariant));

    std::size_t premises = 0;
    for (int k = 0; k < 200; ++k) {
        const std::size_t rows = 3 * (1 + rng() % 2), cols = 3 * (1 + rng() % 2);
        std::vector<group::Element> e(rows * cols);
        const bool latin = k % 2 == 0;
        const std::size_t a = 1 + rng() % 2, b = 1 + rng() % 2, s = rng() % 3;
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t y = 0; y < cols; ++y) e[x * cols + y] = latin ? (a * x + b * y + s) % 3 : rng() % 3;
        const auto rep = group::regularity_check(GroupMapMatrix(AbelianGroupSpec({3}), rows, cols, e));
        premises += rep.rows_diagonal_invariant.value_or(false) || rep.cols_diagonal_invariant.value_or(false);
        r.check(rep.premise_consistent, "diagonal invariance without regularity");
    }
    r.metrics.emplace_back("diagonal_premises", static_cast<double>(premises));

    std::size_t violations = 0;
    for (unsigned a = 0; a < 16; ++a) {
        for (unsigned b = 0; b < 16; ++b) {
            auto make = [](unsigned code) {
                std::vector<std::int8_t> e(4);
                for (int k = 0; k < 4; ++k) e[k] = (code >> k) & 1u ? -1 : 1;
                return SignMatrix(2, 2, std::move(e));
            };
            const bool ok = group::degeneration_check({make(a), make(b)}).equivalent();
            violations += !ok;
            r.check(ok, "degeneration fails for blocks " + std::to_string(a) + ", " + std::to_string(b));
        }
    }
    r.metrics.emplace_back("degeneration_violations", static_cast<double>(violations));
    return r;
}

SuiteResult abelian_degeneration(std::uint64_t) {
    SuiteResult r{"abelian-degeneration", "over Z_2^n the group bound and degree match the Boolean ones", 0, 0, {}, {}};
    const auto z2 = group::characters_abelian(AbelianGroupSpec({2}));
    double worst = 0.0;
    for (std::size_t n = 1; n <= 2; ++n) {
        const std::vector<GroupMapMatrix> blocks(n, GroupMapMatrix::from_sign(named::s4()));
        const auto gmap = GroupMapMatrix::block(blocks);
        const std::vector<CharacterTable> comps(n, z2);
        const auto table = group::product_table(comps);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (1u << n)); ++code) {
            const auto f = BoolFunction::from_code(n, code);
            const std::vector<double> fv(f.table().begin(), f.table().end());
            const std::size_t d = approx_degree(f, 1.0 / 3).d;
            const auto g = group::general_bound(gmap, fv, table, group::degree_partition(comps, d), 0.0);
            const auto s = sherstov_bound(f, named::s4(), 1.0 / 3);
            const bool both = g.applicable && s.applicable;
            r.check(both, "both bounds apply for " + describe(f));
            if (both) {
                const double diff = std::abs(*g.main_term - *s.main_term);
                worst = std::max(worst, diff);
                r.check(diff <= 1e-8, "main terms differ for " + describe(f));
            }
        }
    }
    r.metrics.emplace_back("max_main_term_difference", worst);
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::vector<CharacterTable> comps(n, z2);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (1u << n)); ++code) {
            const auto f = BoolFunction::from_code(n, code);
            const std::vector<double> fv(f.table().begin(), f.table().end());
            r.check(group::product_approx_degree(fv, comps, 1.0 / 3).d == approx_degree(f, 1.0 / 3).d,
                    "degrees differ for " + describe(f));
        }
    }
    return r;
}

using Runner = std::function<SuiteResult(std::uint64_t)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
    static const std::vector<std::pair<std::string, Runner>> r{
        {"rank-formula", rank_formula},
        {"s6", s6_reproduction},
        {"dual-witness", dual_witness},
        {"witness-spectral", witness_spectral},
        {"sherstov-value", sherstov_value},
        {"measure-inequalities", measure_inequalities},
        {"group-props", group_props},
        {"abelian-degeneration", abelian_degeneration},
    };
    return r;
}

}  // namespace

std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
}

SuiteResult run(const std::string& name, std::uint64_t seed) {
    for (const auto& [n, f] : registry())
        if (n == name) return f(seed);
    throw ArgumentError("unknown suite: " + name);
}

}  // namespace commbound::suites
