#include <cmath>
#include <random>

#include "doctest.h"

#include "commbound/approx.hpp"
#include "commbound/composer.hpp"
#include "commbound/error.hpp"
#include "commbound/linalg.hpp"
#include "oracles.hpp"

using namespace commbound;

namespace {

// Independent composition: explicit digit vectors, block 1 most significant.
SignMatrix compose_oracle(const BoolFunction& f, const SignMatrix& g) {
    const std::size_t n = f.arity();
    std::size_t rows = 1, cols = 1;
    for (std::size_t i = 0; i < n; ++i) {
        rows *= g.rows();
        cols *= g.cols();
    }
    std::vector<std::int8_t> e;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<std::size_t> xs(n), ys(n);
            std::size_t rr = r, cc = c;
            for (std::size_t i = n; i-- > 0;) {
                xs[i] = rr % g.rows();
                ys[i] = cc % g.cols();
                rr /= g.rows();
                cc /= g.cols();
            }
            Mask z = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (g(xs[i], ys[i]) == -1) z |= Mask{1} << i;
            e.push_back(static_cast<std::int8_t>(f(z)));
        }
    }
    return SignMatrix(rows, cols, e);
}

const SignMatrix S4 = named::s4();
const SignMatrix S6 = named::s6();
const SignMatrix XOR2 = named::xor2();

}  // namespace

TEST_CASE("char_compose examples") {
    CHECK(char_compose(0, S4, 2) == SignMatrix::all_ones(16, 16));
    CHECK(char_compose(0b11, XOR2, 2) == tensor(XOR2, XOR2));
    CHECK(char_compose(0b01, S4, 2) == tensor(S4, SignMatrix::all_ones(4, 4)));
    CHECK(char_compose(0b10, S4, 2) == tensor(SignMatrix::all_ones(4, 4), S4));
    CHECK_THROWS_AS(char_compose(0b100, S4, 2), ArgumentError);
    CHECK_THROWS_AS(char_compose(0b1, S6, 12), ResourceError);
}

TEST_CASE("compose_block examples") {
    const auto px = compose_block(BoolFunction::parity(2), XOR2);
    CHECK(px.matrix == tensor(XOR2, XOR2));
    CHECK(exact_rank(px.matrix) == 1);
    CHECK(compose_block(BoolFunction::constant(2), S4).matrix == SignMatrix::all_ones(16, 16));
    const auto as = compose_block(BoolFunction::and_fn(2), S4);
    CHECK(as.matrix.rows() == 16);
    CHECK(exact_rank(as.matrix) == 9);
    CHECK(oracle::rational_rank(as.matrix) == 9);
    CHECK_THROWS_AS(compose_block(BoolFunction::parity(10), S4), ResourceError);
    CHECK_THROWS_AS(compose_block(BoolFunction::parity(2), S4, 100), ResourceError);
}

TEST_CASE("composition agrees with the independent builder") {
    std::mt19937_64 rng(7);
    const SignMatrix inners[] = {S4, XOR2, named::hadamard2(), oracle::random_sign_matrix(rng, 2, 3)};
    for (const auto& g : inners) {
        for (std::uint64_t code = 0; code < 16; ++code) {
            const auto f = BoolFunction::from_code(2, code);
            CHECK(compose_block(f, g).matrix == compose_oracle(f, g));
        }
        for (int k = 0; k < 10; ++k) {
            const auto f = BoolFunction::from_code(3, rng() % 256);
            CHECK(compose_block(f, g).matrix == compose_oracle(f, g));
        }
    }
}

TEST_CASE("verify_orthogonality examples") {
    CHECK(verify_orthogonality(S4, 2).orthogonal);
    CHECK(verify_orthogonality(XOR2, 1).orthogonal);
    const auto j = verify_orthogonality(SignMatrix::all_ones(2, 2), 1);
    CHECK_FALSE(j.orthogonal);
    REQUIRE(j.worst_pair);
    CHECK(j.worst_pair->first == 0);
    CHECK(j.worst_pair->second == 1);
    CHECK(j.max_violation == 2);  // J J^T = 2J
    for (std::size_t n = 1; n <= 3; ++n) CHECK(verify_orthogonality(S4, n).orthogonal);
    CHECK(verify_orthogonality(S6, 2).orthogonal);
    CHECK(verify_orthogonality(named::hadamard2(), 1).max_violation > 0);
}

TEST_CASE("verify_rank_theorem examples") {
    const auto a = verify_rank_theorem(BoolFunction::and_fn(2), S4);
    CHECK(a.formula == 9);
    CHECK(a.exact == 9);
    CHECK(a.equal);
    const auto p = verify_rank_theorem(BoolFunction::parity(2), XOR2);
    CHECK(p.formula == 1);
    CHECK(p.exact == 1);
    const auto c = verify_rank_theorem(BoolFunction::constant(2), S6);
    CHECK(c.formula == 1);
    CHECK(c.exact == 1);
    CHECK_THROWS_AS(verify_rank_theorem(BoolFunction::parity(2), named::hadamard2()), PreconditionError);
}

TEST_CASE("build_witness examples") {
    SUBCASE("PARITY_1 over S4 gives S4/16") {
        const auto f = BoolFunction::parity(1);
        DualWitness w;
        w.v = {1, {0.5, -0.5}};
        w.d = 1;
        w.epsilon = 1.0 / 3;
        const auto b = build_witness(w, f, S4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) CHECK(b.B(r, c) == doctest::Approx(S4(r, c) / 16.0));
        CHECK(b.l1 == doctest::Approx(1.0));
    }
    SUBCASE("correlation equals <f, v>") {
        const auto f = BoolFunction::parity(2);
        const auto w = dual_polynomial(f, 1.0 / 3);
        const auto b = build_witness(w, f, S4);
        CHECK(std::abs(b.correlation - w.correlation) <= 1e-10);
        CHECK(b.l1_ok);
        CHECK(b.correlation_ok);
        // B = S4 (x) S4 / 256: 256 entries of magnitude 1/256.
        const auto expect = tensor(S4, S4).to_real();
        for (std::size_t r = 0; r < 16; ++r)
            for (std::size_t c = 0; c < 16; ++c) CHECK(b.B(r, c) == doctest::Approx(expect(r, c) / 256.0));
        CHECK(b.spectral_norm == doctest::Approx(oracle::spectral_norm(b.B)));
    }
    SUBCASE("distribution path") {
        const auto f = BoolFunction::and_fn(2);
        const auto w = dual_polynomial(f, 1.0 / 3);
        const auto b = build_witness(w, f, XOR2, oracle::uniform(2, 2));
        CHECK(b.l1_ok);
        CHECK(b.correlation_ok);
        CHECK(b.mu.has_value());
        // A skewed but balanced distribution.
        RealMatrix mu(2, 2, std::vector<double>{0.4, 0.1, 0.4, 0.1});
        const auto b2 = build_witness(w, f, XOR2, mu);
        CHECK(b2.l1 == doctest::Approx(1.0));
        CHECK(b2.correlation == doctest::Approx(w.correlation));
    }
    SUBCASE("precondition failures") {
        const auto f = BoolFunction::parity(2);
        const auto w = dual_polynomial(f, 1.0 / 3);
        CHECK_THROWS_AS(build_witness(w, f, named::hadamard2()), PreconditionError);
        RealMatrix skew(2, 2, std::vector<double>{0.7, 0.1, 0.1, 0.1});
        CHECK_THROWS_AS(build_witness(w, f, XOR2, skew), PreconditionError);
        RealMatrix unnormalized(2, 2, std::vector<double>{0.5, 0.5, 0.5, 0.5});
        CHECK_THROWS_AS(build_witness(w, f, XOR2, unnormalized), PreconditionError);
    }
}

TEST_CASE("witness spectral bound and character norms") {
    for (const auto& g : {S4, S6}) {
        const double ng = oracle::spectral_norm(g.to_real());
        for (std::uint64_t code = 0; code < 16; ++code) {
            const auto f = BoolFunction::from_code(2, code);
            const auto w = dual_polynomial(f, 1.0 / 3);
            const auto b = build_witness(w, f, g);
            CHECK(b.l1 == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(b.correlation >= 1.0 / 3 - 1e-8);
            CHECK(b.spectral_norm <= witness_norm_bound(ng, g.size(), w.d, 2) + 1e-8);
        }
        for (Mask t = 0; t < 4; ++t)
            CHECK(character_norm(t, g, 2) == doctest::Approx(oracle::spectral_norm(char_compose(t, g, 2).to_real())));
    }
}
