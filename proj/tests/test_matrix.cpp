#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "commbound/linalg.hpp"
#include "commbound/matrix.hpp"
#include "commbound/pattern.hpp"
#include "oracles.hpp"

using namespace commbound;

namespace {
const double kSqrt2 = std::sqrt(2.0);

SignMatrix J(std::size_t m, std::size_t n) { return SignMatrix::all_ones(m, n); }

IntMatrix int_from_real(const RealMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = static_cast<std::int64_t>(m.data()[i]);
    return out;
}
}  // namespace

TEST_CASE("sign matrix construction rejects bad input") {
    CHECK_THROWS_AS(SignMatrix(2, 2, {1, -1, 1}), ArgumentError);
    CHECK_THROWS_AS(SignMatrix(1, 2, {1, 0}), ArgumentError);
    CHECK_THROWS_AS(SignMatrix(0, 0, {}), ArgumentError);
    CHECK_THROWS_AS((SignMatrix{{1, 1}, {1}}), ArgumentError);
}

TEST_CASE("exact rank") {
    CHECK(exact_rank(J(4, 4)) == 1);
    CHECK(exact_rank(named::s4()) == 2);
    // sympy Matrix(S6).rank(), see tests/oracles/compute_oracles.py
    CHECK(exact_rank(named::s6()) == 5);
    CHECK(exact_rank(named::xor2()) == 1);
    CHECK(exact_rank(named::hadamard2()) == 2);
}

TEST_CASE("exact rank agrees with rational elimination on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = oracle::random_sign_matrix(rng, 1 + rng() % 12, 1 + rng() % 12);
        CHECK(exact_rank(m) == oracle::rational_rank(m));
    }
    // low-rank structure: tensor products force rank deficiency
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_sign_matrix(rng, 3, 3);
        const auto b = oracle::random_sign_matrix(rng, 4, 4);
        const auto ab = tensor(a, b);
        CHECK(exact_rank(ab) == oracle::rational_rank(ab));
    }
}

TEST_CASE("spectrum examples") {
    SUBCASE("all-ones has norm sqrt(mn)") {
        const auto rep = spectrum(J(3, 5));
        CHECK(rep.spectral_norm == doctest::Approx(std::sqrt(15.0)).epsilon(1e-12));
        CHECK(rep.numeric_rank == 1);
    }
    SUBCASE("H2") {
        const auto rep = spectrum(named::hadamard2());
        REQUIRE(rep.singular_values.size() == 2);
        CHECK(rep.singular_values[0] == doctest::Approx(kSqrt2).epsilon(1e-12));
        CHECK(rep.singular_values[1] == doctest::Approx(kSqrt2).epsilon(1e-12));
    }
    SUBCASE("S4") {
        const auto rep = spectrum(named::s4());
        CHECK(rep.spectral_norm == doctest::Approx(2 * kSqrt2).epsilon(1e-12));
        CHECK(rep.numeric_rank == 2);
        const auto eig = oracle::gram_eigenvalues(named::s4().to_real());
        CHECK(eig[0] == doctest::Approx(8.0));
        CHECK(eig[1] == doctest::Approx(8.0));
        CHECK(std::abs(eig[2]) < 1e-12);
        CHECK(std::abs(eig[3]) < 1e-12);
    }
    SUBCASE("S6 against Eigen") {
        const auto rep = spectrum(named::s6());
        const auto ref = oracle::singular_values(named::s6().to_real());
        for (std::size_t i = 0; i < ref.size(); ++i)
            CHECK(std::abs(rep.singular_values[i] - ref[i]) <= 1e-9 * ref[0]);
        CHECK(rep.spectral_norm == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-12));
        CHECK(rep.numeric_rank == 5);
    }
    CHECK_THROWS_AS(spectrum(named::s4(), 0.0), ArgumentError);
}

TEST_CASE("complex spectrum matches real embedding route") {
    ComplexMatrix m(2, 3);
    m(0, 0) = {1, 1};
    m(0, 2) = {0, -2};
    m(1, 1) = {3, 0};
    m(1, 2) = {1, 0};
    const auto rep = spectrum(m);
    // m m^dagger = [[6, 2i],[-2i, 10]] -> eigenvalues 8 +- sqrt(8)
    REQUIRE(rep.singular_values.size() == 2);
    CHECK(rep.singular_values[0] == doctest::Approx(std::sqrt(8 + std::sqrt(8.0))));
    CHECK(rep.singular_values[1] == doctest::Approx(std::sqrt(8 - std::sqrt(8.0))));
}

TEST_CASE("Jacobi iteration cap surfaces as solver error") {
    std::mt19937_64 rng(3);
    const auto m = oracle::random_sign_matrix(rng, 12, 12);
    JacobiOptions opts;
    opts.max_sweeps = 1;
    CHECK_THROWS_AS(spectrum(m, 1e-9, opts), SolverError);
}

TEST_CASE("property: frobenius norm and numeric rank") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = oracle::random_sign_matrix(rng, 1 + rng() % 8, 1 + rng() % 8);
        const auto rep = spectrum(m, 1e-9);
        CHECK(std::abs(rep.frobenius_norm - std::sqrt(static_cast<double>(m.size()))) <= 1e-9);
        CHECK(rep.numeric_rank == exact_rank(m));
        CHECK(std::is_sorted(rep.singular_values.rbegin(), rep.singular_values.rend()));
    }
}

TEST_CASE("property: Fact 1 for orthogonal pairs") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 6, n = 7;
        // rows {0..2} x cols {0..3} for A, rows {3..5} x cols {4..6} for B
        RealMatrix a(m, n), b(m, n);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 4; ++c) a(r, c) = entry(rng);
        for (std::size_t r = 3; r < m; ++r)
            for (std::size_t c = 4; c < n; ++c) b(r, c) = entry(rng);
        RealMatrix sum(m, n);
        for (std::size_t i = 0; i < sum.size(); ++i) sum.data()[i] = a.data()[i] + b.data()[i];

        CHECK(exact_rank(int_from_real(sum)) ==
              exact_rank(int_from_real(a)) + exact_rank(int_from_real(b)));
        const auto sa = spectrum(a), sb = spectrum(b), ss = spectrum(sum);
        CHECK(std::abs(ss.trace_norm - (sa.trace_norm + sb.trace_norm)) <= 1e-8);
        CHECK(std::abs(ss.spectral_norm - std::max(sa.spectral_norm, sb.spectral_norm)) <= 1e-8);
    }
}

TEST_CASE("balance check") {
    CHECK(balance_check(named::s4()).strongly_balanced);
    CHECK(balance_check(named::s6()).strongly_balanced);
    const auto j = balance_check(J(4, 4));
    CHECK_FALSE(j.balanced);
    CHECK_FALSE(j.strongly_balanced);
    const auto h = balance_check(named::hadamard2());
    CHECK(h.balanced == false);  // total is 2
    const SignMatrix bal{{1, 1}, {-1, -1}};
    CHECK(balance_check(bal).balanced);
    CHECK_FALSE(balance_check(bal).strongly_balanced);
}

TEST_CASE("property: strongly balanced iff AJ^T = 0 and A^T J = 0 on all 4x4") {
    const auto ones = J(4, 4).to_int();
    for (std::uint64_t code = 0; code < (1u << 16); ++code) {
        const auto a = oracle::sign_matrix_from_code(code, 4, 4);
        const auto ai = a.to_int();
        const auto ajt = multiply(ai, ones.transpose());
        const auto atj = multiply(ai.transpose(), ones);
        const auto zero = [](const IntMatrix& x) {
            return std::all_of(x.data().begin(), x.data().end(), [](auto v) { return v == 0; });
        };
        const auto rep = balance_check(a);
        REQUIRE(rep.strongly_balanced == (zero(ajt) && zero(atj)));
        REQUIRE((!rep.strongly_balanced || rep.balanced));
    }
}

TEST_CASE("contains_pattern examples") {
    const auto s4 = named::s4(), s6 = named::s6();
    SUBCASE("identity selection") {
        const auto match = contains_pattern(s4, s4, PatternMode::ordered);
        REQUIRE(match.found);
        CHECK(match.witness->rows == std::vector<std::size_t>{0, 1, 2, 3});
        CHECK(match.witness->cols == std::vector<std::size_t>{0, 1, 2, 3});
    }
    SUBCASE("S6 is S4-free in both modes") {
        CHECK_FALSE(contains_pattern(s6, s4, PatternMode::up_to_permutation).found);
        CHECK_FALSE(contains_pattern(s6, s4, PatternMode::ordered).found);
        CHECK_FALSE(oracle::contains_brute(s6, s4, true));
    }
    SUBCASE("J has no -1") { CHECK_FALSE(contains_pattern(J(4, 4), s4).found); }
    SUBCASE("permuted copy is found only up to permutation") {
        const auto shuffled = s4.permuted({2, 0, 3, 1}, {1, 3, 0, 2});
        const auto big = tensor(shuffled, J(1, 2));
        const auto match = contains_pattern(big, s4, PatternMode::up_to_permutation);
        REQUIRE(match.found);
        CHECK(big.submatrix(match.witness->rows, match.witness->cols) == s4);
    }
    CHECK_THROWS_AS(contains_pattern(s4, s6), ArgumentError);
}

TEST_CASE("property: contains_pattern agrees with brute force") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = oracle::random_sign_matrix(rng, 3 + rng() % 3, 3 + rng() % 3);
        const auto p = oracle::random_sign_matrix(rng, 1 + rng() % 3, 1 + rng() % 3);
        for (bool permute : {false, true}) {
            const auto match = contains_pattern(m, p, permute ? PatternMode::up_to_permutation
                                                              : PatternMode::ordered);
            REQUIRE(match.found == oracle::contains_brute(m, p, permute));
            if (match.found) {
                CHECK(m.submatrix(match.witness->rows, match.witness->cols) == p);
                if (!permute) {
                    CHECK(std::is_sorted(match.witness->rows.begin(), match.witness->rows.end()));
                    CHECK(std::is_sorted(match.witness->cols.begin(), match.witness->cols.end()));
                }
            }
        }
    }
}

TEST_CASE("tensor and entrywise") {
    CHECK(tensor(named::hadamard2(), J(1, 1)) == named::hadamard2());
    CHECK(entrywise(named::s4(), named::s4()) == J(4, 4));
    CHECK(exact_rank(tensor(named::xor2(), named::xor2())) == 1);
    CHECK_THROWS_AS(entrywise(named::s4(), named::xor2()), ArgumentError);
    CHECK_THROWS_AS(entrywise(RealMatrix(2, 2), RealMatrix(2, 3)), ArgumentError);
}

TEST_CASE("property: tensor associativity and rank multiplicativity") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = oracle::random_sign_matrix(rng, 1 + rng() % 4, 1 + rng() % 4);
        const auto b = oracle::random_sign_matrix(rng, 1 + rng() % 4, 1 + rng() % 4);
        const auto c = oracle::random_sign_matrix(rng, 1 + rng() % 3, 1 + rng() % 3);
        CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
        CHECK(exact_rank(tensor(a, b)) == exact_rank(a) * exact_rank(b));
    }
}

TEST_CASE("search_strongly_balanced") {
    SUBCASE("2x2 yields the XOR pattern") {
        const auto found = search_strongly_balanced(2, 2, {.min_rank = 1});
        REQUIRE(found.size() == 1);
        CHECK(found[0] == canonical_form(named::xor2()));
    }
    SUBCASE("4x4 has two classes; none is S4-free with rank >= 2") {
        CHECK(search_strongly_balanced(4, 4, {}).size() == 2);
        CHECK(search_strongly_balanced(4, 4, {.min_rank = 2, .forbidden = named::s4()}).empty());
    }
    SUBCASE("6x6 S4-free with rank >= 2 includes S6") {
        const auto found = search_strongly_balanced(6, 6, {.min_rank = 2, .forbidden = named::s4()});
        REQUIRE_FALSE(found.empty());
        const auto target = canonical_form(named::s6());
        CHECK(std::find(found.begin(), found.end(), target) != found.end());
        for (const auto& m : found) {
            CHECK(balance_check(m).strongly_balanced);
            CHECK(exact_rank(m) >= 2);
            CHECK_FALSE(contains_pattern(m, named::s4()).found);
            CHECK(canonical_form(m) == m);
        }
    }
    SUBCASE("emission cap and early stop") {
        CHECK(search_strongly_balanced(6, 6, {.max_results = 3}).size() == 3);
        std::size_t seen = 0;
        search_strongly_balanced(4, 4, {}, [&](const SignMatrix&) { return ++seen < 1; });
        CHECK(seen == 1);
    }
    CHECK_THROWS_AS(search_strongly_balanced(3, 4, {}), ArgumentError);
    CHECK_THROWS_AS(search_strongly_balanced(4, 5, {}), ArgumentError);
}

TEST_CASE("canonical form is permutation invariant") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = oracle::random_sign_matrix(rng, 4, 5);
        std::vector<std::size_t> rp{0, 1, 2, 3}, cp{0, 1, 2, 3, 4};
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        CHECK(canonical_form(m) == canonical_form(m.permuted(rp, cp)));
    }
}

TEST_CASE("sign matrix text format") {
    std::istringstream in("4 4\n+1 -1 + -\n1 -1 -1 +1\n- + + -\n-1 +1 -1 +1\n");
    CHECK(parse_sign_matrix(in) == named::s4());
    std::istringstream again(to_string(named::s6()));
    CHECK(parse_sign_matrix(again) == named::s6());
    CHECK(to_string(named::xor2()) == "2 2\n+1 -1\n-1 +1\n");

    std::istringstream bad_token("1 2\n+1 0\n");
    CHECK_THROWS_AS(parse_sign_matrix(bad_token), ArgumentError);
    std::istringstream short_input("2 2\n+1 -1\n");
    CHECK_THROWS_AS(parse_sign_matrix(short_input), ArgumentError);
    std::istringstream no_header("");
    CHECK_THROWS_AS(parse_sign_matrix(no_header), ArgumentError);
}
