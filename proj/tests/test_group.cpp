#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"

#include "commbound/approx.hpp"
#include "commbound/bounds.hpp"
#include "commbound/error.hpp"
#include "commbound/groupcomp.hpp"
#include "commbound/linalg.hpp"

using namespace commbound;
using namespace commbound::group;

namespace {

const SignMatrix S4 = named::s4();

std::vector<double> class_function(const BoolFunction& f) {
    return {f.table().begin(), f.table().end()};
}

CharacterTable z2() { return characters_abelian(AbelianGroupSpec({2})); }

// S3 with elements e, three transpositions, two 3-cycles.
const char* kS3Json = R"({
  "h": 3, "order": 6,
  "table": [[1,1,1,1,1,1], [1,-1,-1,-1,1,1], [2,0,0,0,-1,-1]],
  "class_of": [0,1,1,1,2,2],
  "degrees": [1,1,2]
})";

PairMultiset random_multiset(std::mt19937_64& rng, std::size_t order, bool invariant, const AbelianGroupSpec* g) {
    PairMultiset t;
    const std::size_t k = 1 + rng() % 4;
    for (std::size_t i = 0; i < k; ++i) {
        const Element s = rng() % order, u = rng() % order;
        const std::size_t mult = 1 + rng() % 3;
        if (invariant) {
            for (Element r = 0; r < order; ++r) t.add(g->add(r, s), g->add(r, u), mult);
        } else {
            t.add(s, u, mult);
        }
    }
    return t;
}

}  // namespace

TEST_CASE("AbelianGroupSpec encoding") {
    const AbelianGroupSpec g({3, 4});
    CHECK(g.order() == 12);
    CHECK(g.encode({2, 1}) == 2 + 3 * 1);
    CHECK(g.decode(5) == std::vector<std::size_t>{2, 1});
    CHECK(g.format(5) == "2:1");
    CHECK(g.parse("2:1") == 5);
    CHECK(g.add(g.parse("2:3"), g.parse("2:2")) == g.parse("1:1"));
    CHECK(g.add(7, g.negate(7)) == 0);
    CHECK_THROWS_AS(AbelianGroupSpec({1}), ArgumentError);
    CHECK_THROWS_AS(AbelianGroupSpec({128, 256}), ArgumentError);
    CHECK_THROWS_AS(g.parse("3:0"), ArgumentError);
    CHECK_THROWS_AS(g.parse("1"), ArgumentError);
}

TEST_CASE("characters_abelian examples") {
    SUBCASE("Z_2^n matches boolfn characters") {
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto t = characters_abelian(AbelianGroupSpec(std::vector<std::size_t>(n, 2)));
            CHECK(t.h == (1u << n));
            for (Mask a = 0; a < t.h; ++a)
                for (Mask x = 0; x < t.order; ++x) CHECK(t(a, x) == Complex(character_eval(a, x), 0.0));
        }
    }
    SUBCASE("Z_3") {
        const auto t = characters_abelian(AbelianGroupSpec({3}));
        const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t x = 0; x < 3; ++x) CHECK(std::abs(t(a, x) - std::pow(w, double(a * x))) < 1e-12);
        CHECK(t.h == 3);
    }
    SUBCASE("Z_4 x Z_3 is orthogonal and matches the product table") {
        const auto t = characters_abelian(AbelianGroupSpec({4, 3}));
        CHECK(t.orthogonality_error() < 1e-9);
        const auto p = product_table({characters_abelian(AbelianGroupSpec({4})),
                                      characters_abelian(AbelianGroupSpec({3}))});
        for (std::size_t i = 0; i < t.h; ++i)
            for (Element g = 0; g < t.order; ++g) CHECK(std::abs(t(i, g) - p(i, g)) < 1e-12);
        CHECK(t.identity() == 0);
    }
}

TEST_CASE("character table JSON and validation") {
    std::istringstream in(kS3Json);
    const auto s3 = parse_character_table(in);
    CHECK(s3.h == 3);
    CHECK(s3.class_sizes() == std::vector<std::size_t>{1, 3, 2});
    CHECK(s3.identity() == 0);

    std::istringstream bad(R"({"h": 2, "order": 2, "table": [[1,0],[1,0],[1,0],[1,0]], "degrees": [1,1]})");
    CHECK_THROWS_AS(parse_character_table(bad), ArgumentError);
    std::istringstream pairs(R"({"h": 2, "order": 2, "table": [[1,0],[1,0],[1,0],[-1,0]], "class_of": [0,1]})");
    CHECK(parse_character_table(pairs)(1, 1) == Complex(-1, 0));
    std::istringstream garbage("{ not json");
    CHECK_THROWS_AS(parse_character_table(garbage), ArgumentError);
}

TEST_CASE("group map format") {
    std::istringstream in("group 2,3\n0:0, 1:2\n1:1, 0:0\n");
    const auto m = parse_group_map(in);
    CHECK(m.rows == 2);
    CHECK(m.cols == 2);
    CHECK(m(0, 1) == m.abelian->parse("1:2"));
    std::ostringstream out;
    write_group_map(out, m);
    std::istringstream back(out.str());
    CHECK(parse_group_map(back).entries == m.entries);
    std::istringstream ragged("group 2\n0,1\n1\n");
    CHECK_THROWS_AS(parse_group_map(ragged), ArgumentError);
    std::istringstream headless("0,1\n");
    CHECK_THROWS_AS(parse_group_map(headless), ArgumentError);
}

TEST_CASE("g_invariant and orthogonality_sums examples") {
    const AbelianGroupSpec z3({3});
    const auto t3 = characters_abelian(z3);
    PairMultiset diag;
    for (Element s = 0; s < 3; ++s) diag.add(s, s);
    CHECK(g_invariant(diag, z3));
    CHECK(orthogonality_sums(diag, t3) < 1e-12);

    PairMultiset two;
    two.add(0, 0);
    two.add(0, 1);
    CHECK_FALSE(g_invariant(two, z3));
    CHECK(orthogonality_sums(two, t3) > 1e-6);

    PairMultiset closure;
    for (Element r = 0; r < 3; ++r) {
        closure.add(z3.add(r, 0), z3.add(r, 2), 2);
        closure.add(z3.add(r, 1), z3.add(r, 1));
    }
    CHECK(g_invariant(closure, z3));
}

TEST_CASE("G-invariance iff vanishing cross sums on random multisets") {
    std::mt19937_64 rng(42);
    const std::vector<AbelianGroupSpec> groups{AbelianGroupSpec({3}), AbelianGroupSpec({4}), AbelianGroupSpec({2, 2})};
    std::size_t invariant_seen = 0, total = 0;
    for (const auto& g : groups) {
        const auto table = characters_abelian(g);
        for (int k = 0; k < 500; ++k) {
            const auto t = random_multiset(rng, g.order(), k % 2 == 0, &g);
            const bool inv = g_invariant(t, g);
            const bool sums = orthogonality_sums(t, table) <= 1e-8 * double(t.total());
            CHECK(inv == sums);
            const auto tp = tprime_check(t, table);
            CHECK(tp.agree());
            CHECK(tp.statement1 == inv);
            invariant_seen += inv;
            ++total;
        }
    }
    CHECK(invariant_seen > total / 3);
    CHECK(invariant_seen < total);
}

TEST_CASE("pair_multisets examples") {
    const auto one = pair_multisets(GroupMapMatrix(AbelianGroupSpec({3}), 1, 1, {2}));
    CHECK(one.row_pairs.size() == 1);
    CHECK(one.s(0, 0).total() == 1);
    CHECK(one.t(0, 0).total() == 1);

    const auto x = GroupMapMatrix::from_sign(named::xor2());
    const auto p = pair_multisets(x);
    PairMultiset expect;
    expect.add(0, 1);
    expect.add(1, 0);
    CHECK(p.s(0, 1) == expect);
    CHECK(g_invariant(p.s(0, 1), *x.abelian));

    const auto s4 = GroupMapMatrix::from_sign(S4);
    const auto q = pair_multisets(s4);
    CHECK(q.row_pairs.size() == 16);
    for (const auto& s : q.row_pairs) CHECK(s.total() == 4);
}

TEST_CASE("regularity_check examples") {
    const auto reg = regularity_check(GroupMapMatrix::from_sign(S4));
    CHECK(reg.regular);
    CHECK(*reg.rows_diagonal_invariant);
    const auto constant = regularity_check(GroupMapMatrix(AbelianGroupSpec({2}), 2, 2, {0, 0, 0, 0}));
    CHECK_FALSE(constant.regular);
    const auto odd = regularity_check(GroupMapMatrix(AbelianGroupSpec({2}), 1, 3, {0, 1, 0}));
    CHECK_FALSE(odd.regular);
    CHECK(odd.reason.find("divisible") != std::string::npos);

    // Diagonal invariance implies regularity; check on random maps over Z_3.
    std::mt19937_64 rng(8);
    std::size_t premises = 0;
    for (int k = 0; k < 300; ++k) {
        const std::size_t rows = 3 * (1 + rng() % 2), cols = 3 * (1 + rng() % 2);
        std::vector<Element> e(rows * cols);
        const bool latin = k % 2 == 0;
        const std::size_t shift = rng() % 3;
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t y = 0; y < cols; ++y) e[x * cols + y] = latin ? (x + 2 * y + shift) % 3 : rng() % 3;
        const auto r = regularity_check(GroupMapMatrix(AbelianGroupSpec({3}), rows, cols, e));
        CHECK(r.premise_consistent);
        premises += (*r.rows_diagonal_invariant || *r.cols_diagonal_invariant);
    }
    CHECK(premises >= 150);
}

TEST_CASE("orthogonality_general examples") {
    const auto g = GroupMapMatrix::block({GroupMapMatrix::from_sign(S4), GroupMapMatrix::from_sign(S4)});
    const auto table = characters_abelian(*g.abelian);
    CHECK(orthogonality_general(g, table, {1, 2, 3}).passed());

    const auto column = GroupMapMatrix(AbelianGroupSpec({3}), 3, 1, {1, 1, 1});
    CHECK_FALSE(orthogonality_general(column, characters_abelian(AbelianGroupSpec({3})), {1, 2}).passed());
    CHECK(orthogonality_general(column, characters_abelian(AbelianGroupSpec({3})), {1}).passed());

    const auto h2 = GroupMapMatrix::from_sign(named::hadamard2());
    CHECK_FALSE(orthogonality_general(h2, z2(), {0, 1}).passed());
}

TEST_CASE("tprime_check examples") {
    const AbelianGroupSpec z3({3});
    const auto t3 = characters_abelian(z3);
    PairMultiset diag;
    for (Element s = 0; s < 3; ++s) diag.add(s, s);
    const auto d = tprime_check(diag, t3);
    CHECK(d.statement1);
    CHECK(d.statement3);

    PairMultiset two;
    two.add(0, 0);
    two.add(0, 1);
    const auto n = tprime_check(two, t3);
    CHECK_FALSE(n.statement1);
    CHECK_FALSE(n.statement3);
    CHECK(n.agree());

    SUBCASE("nonabelian S3") {
        std::istringstream in(kS3Json);
        const auto s3 = parse_character_table(in);
        PairMultiset sd;
        for (Element s = 0; s < 6; ++s) sd.add(s, s);
        const auto a = tprime_check(sd, s3);
        CHECK(a.statement1);
        CHECK(a.statement3);
        // T' averages within class pairs: the transposition block is 1/3 everywhere.
        CHECK(a.tprime(1, 2) == doctest::Approx(1.0 / 3));
        PairMultiset skew;
        skew.add(0, 1);
        const auto b = tprime_check(skew, s3);
        CHECK_FALSE(b.statement1);
        CHECK_FALSE(b.statement3);
    }
    CharacterTable no_classes = t3;
    no_classes.class_of.clear();
    CHECK_THROWS_AS(tprime_check(diag, no_classes), ArgumentError);
}

TEST_CASE("distance_to_easy examples") {
    const auto t = characters_abelian(AbelianGroupSpec({2, 2}));
    const auto f = class_function(BoolFunction::and_fn(2));
    CHECK(distance_to_easy(f, t, {0, 1, 2, 3}).delta == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(distance_to_easy(f, t, {}).delta == doctest::Approx(1.0));
    const double boolean = best_approximation(BoolFunction::and_fn(2), 1).error;
    CHECK(distance_to_easy(f, t, {0, 1, 2}).delta == doctest::Approx(boolean));
    CHECK(boolean == doctest::Approx(0.5));
    CHECK_THROWS_AS(distance_to_easy({1.0}, t, {}), ArgumentError);
}

TEST_CASE("dual_h examples") {
    SUBCASE("Z_2, no easy characters") {
        const auto t = z2();
        const std::vector<double> f{1.0, -1.0};
        const auto h = dual_h(f, t, {});
        CHECK(h.passed());
        CHECK(h.l1 == doctest::Approx(2.0));
        CHECK(h.delta == doctest::Approx(1.0));
    }
    SUBCASE("Z_2^n reduction to the dual polynomial") {
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto table = characters_abelian(AbelianGroupSpec(std::vector<std::size_t>(n, 2)));
            for (std::uint64_t code = 0; code < (1u << (1u << n)); code += 3) {
                const auto f = BoolFunction::from_code(n, code);
                const std::size_t d = approx_degree(f, 1.0 / 3).d;
                if (d == 0) continue;
                std::vector<std::size_t> easy;
                for (Mask s = 0; s < table.h; ++s)
                    if (static_cast<std::size_t>(__builtin_popcount(s)) < d) easy.push_back(s);
                const auto h = dual_h(class_function(f), table, easy);
                CHECK(h.passed());
                CHECK(h.warnings.empty());
                // Halving h gives a unit-mass witness with the same optimum.
                DualWitness w;
                w.v.n = n;
                for (const auto& v : h.h) w.v.table.push_back(v.real() / 2);
                w.d = d;
                w.epsilon = 1.0 / 3;
                CHECK(verify_dual(w, f).passed());
                CHECK(h.correlation / 2 == doctest::Approx(dual_polynomial(f, 1.0 / 3).correlation).epsilon(1e-7));
            }
        }
    }
    SUBCASE("coefficient bound on every produced h") {
        const std::vector<AbelianGroupSpec> groups{AbelianGroupSpec({3}), AbelianGroupSpec({4}),
                                                   AbelianGroupSpec({3, 3}), AbelianGroupSpec({2, 2})};
        std::mt19937_64 rng(4);
        for (const auto& g : groups) {
            const auto table = characters_abelian(g);
            for (int k = 0; k < 10; ++k) {
                std::vector<double> f(g.order());
                for (double& v : f) v = (rng() & 1) ? 1.0 : -1.0;
                std::vector<std::size_t> easy{0};
                for (std::size_t i = 1; i < table.h; ++i)
                    if (rng() % 3 == 0) easy.push_back(i);
                const auto h = dual_h(f, table, easy);
                CHECK(h.hard_ok);
                CHECK(h.l1_ok);
                const auto c = character_coefficients(h.h, table);
                for (std::size_t i = 0; i < table.h; ++i) CHECK(std::abs(c[i]) <= h.l1 / double(g.order()) + 1e-9);
            }
        }
    }
}

TEST_CASE("general_bound agrees with sherstov_bound over Z_2^n") {
    for (std::size_t n = 1; n <= 2; ++n) {
        std::vector<GroupMapMatrix> blocks(n, GroupMapMatrix::from_sign(S4));
        const auto gmap = GroupMapMatrix::block(blocks);
        const std::vector<CharacterTable> comps(n, z2());
        const auto table = product_table(comps);
        for (std::uint64_t code = 0; code < (1u << (1u << n)); ++code) {
            const auto f = BoolFunction::from_code(n, code);
            const std::size_t d = approx_degree(f, 1.0 / 3).d;
            const auto part = degree_partition(comps, d);
            const auto g = general_bound(gmap, class_function(f), table, part, 0.0);
            const auto s = sherstov_bound(f, S4, 1.0 / 3);
            REQUIRE(g.applicable);
            CHECK(std::abs(*g.main_term - *s.main_term) <= 1e-8);
        }
    }
    const auto gmap = GroupMapMatrix::block({GroupMapMatrix::from_sign(S4), GroupMapMatrix::from_sign(S4)});
    const auto table = characters_abelian(*gmap.abelian);
    const auto f = class_function(BoolFunction::parity(2));
    CHECK(*general_bound(gmap, f, table, degree_partition({z2(), z2()}, 2), 0.0).main_term == doctest::Approx(1.0));
    const auto vac = general_bound(gmap, f, table, degree_partition({z2(), z2()}, 2), 0.5);
    CHECK_FALSE(vac.applicable);
    HardnessPartition all_easy{{0, 1, 2, 3}, {}, std::nullopt};
    CHECK_FALSE(general_bound(gmap, f, table, all_easy, 0.0).applicable);
    const auto h2 = GroupMapMatrix::from_sign(named::hadamard2());
    CHECK_FALSE(general_bound(h2, {1.0, -1.0}, z2(), {{0}, {1}, std::nullopt}, 0.0).applicable);
}

TEST_CASE("product_approx_degree") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::vector<CharacterTable> comps(n, z2());
        for (std::uint64_t code = 0; code < (1u << (1u << n)); ++code) {
            const auto f = BoolFunction::from_code(n, code);
            CHECK(product_approx_degree(class_function(f), comps, 1.0 / 3).d == approx_degree(f, 1.0 / 3).d);
        }
    }
    const auto z3 = characters_abelian(AbelianGroupSpec({3}));
    CHECK(product_approx_degree(std::vector<double>(9, 1.0), {z3, z3}, 1.0 / 3).d == 0);
    // Re chi_(1,1) on Z_3^2: distance 3/4 to every span with <= 1 non-identity component.
    const auto t = product_table({z3, z3});
    const Element a = 1 + 3 * 1;
    std::vector<double> f(9);
    for (Element g = 0; g < 9; ++g) f[g] = t(a, g).real();
    const auto r = product_approx_degree(f, {z3, z3}, 1.0 / 3);
    CHECK(r.d == 2);
    CHECK(r.deltas[0] == doctest::Approx(0.75));
    CHECK(r.deltas[1] == doctest::Approx(0.75));
    CHECK(product_approx_degree(f, {z3, z3}, 0.8).d == 0);
}

TEST_CASE("block_group_bound") {
    const auto s4 = GroupMapMatrix::from_sign(S4);
    for (const auto& f : {BoolFunction::parity(2), BoolFunction::and_fn(2), BoolFunction::from_code(2, 0b0101)}) {
        const auto b = block_group_bound({s4, s4}, class_function(f), {z2(), z2()});
        REQUIRE(b.applicable);
        CHECK(std::abs(*b.main_term - *sherstov_bound(f, S4, 1.0 / 3).main_term) <= 1e-8);
    }
    const auto full = block_group_bound({s4, s4}, class_function(BoolFunction::parity(2)), {z2(), z2()});
    CHECK(*full.intermediate("chosen_set_size") == 2);
    CHECK(full.warnings.size() == 2);

    // Single Z_3 block with the Latin square x + y: every character map has rank 1.
    std::vector<Element> latin(9);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) latin[x * 3 + y] = (x + y) % 3;
    const GroupMapMatrix lg(AbelianGroupSpec({3}), 3, 3, latin);
    const auto z3 = characters_abelian(AbelianGroupSpec({3}));
    const auto r = block_group_bound({lg}, {1.0, -1.0, -1.0}, {z3});
    REQUIRE(r.applicable);
    CHECK(*r.intermediate("d") == 1);
    CHECK(*r.main_term == doctest::Approx(0.0).epsilon(1e-9));

    const auto h2 = GroupMapMatrix::from_sign(named::hadamard2());
    CHECK_FALSE(block_group_bound({h2}, {1.0, -1.0}, {z2()}).applicable);
}

TEST_CASE("degeneration_check") {
    const auto both = degeneration_check({S4, S4});
    CHECK(both.all_invariant);
    CHECK(both.all_balanced);
    const auto j = degeneration_check({SignMatrix::all_ones(2, 2), S4});
    CHECK_FALSE(j.all_invariant);
    CHECK_FALSE(j.all_balanced);
    std::size_t violations = 0, balanced = 0;
    for (unsigned a = 0; a < 16; ++a) {
        for (unsigned b = 0; b < 16; ++b) {
            auto make = [](unsigned code) {
                std::vector<std::int8_t> e(4);
                for (int k = 0; k < 4; ++k) e[k] = (code >> k) & 1u ? -1 : 1;
                return SignMatrix(2, 2, e);
            };
            const auto rep = degeneration_check({make(a), make(b)});
            violations += !rep.equivalent();
            balanced += rep.all_balanced;
        }
    }
    CHECK(violations == 0);
    CHECK(balanced == 4);  // two strongly balanced 2x2 matrices per block
}

TEST_CASE("invariance_search is deterministic") {
    const auto a = invariance_search(3, 3, 6, 40, 1);
    const auto b = invariance_search(3, 3, 6, 40, 1);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].gmap.entries == b[i].gmap.entries);
    for (const auto& c : a) CHECK(regularity_check(c.gmap).regular);
    CHECK_THROWS_AS(invariance_search(3, 4, 3, 1, 0), ArgumentError);
}
