#pragma once

// Block composition f o g^n of an outer Boolean function with an inner sign
// matrix, the character matrices M_{chi_T o g^n}, and the witness matrices
// built from dual polynomials.
//
// Multi-index order: a row index of the composed matrix is (x^1, ..., x^n)
// read as a base-|X| number with block 1 most significant; likewise columns.
// Block i feeds coordinate x_i of f, i.e. bit i-1 of the point mask.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "commbound/approx.hpp"
#include "commbound/boolfn.hpp"
#include "commbound/matrix.hpp"

namespace commbound {

inline constexpr std::size_t kDefaultEntryCap = std::size_t{1} << 24;

/// Kronecker product of M_g at positions in T and J elsewhere.
/// Throws ResourceError above entry_cap.
SignMatrix char_compose(Mask subset, const SignMatrix& g, std::size_t n,
                        std::size_t entry_cap = kDefaultEntryCap);

struct Composition {
    BoolFunction f;
    SignMatrix g;
    std::size_t n;
    SignMatrix matrix;
};

/// Builds M_{f o g^n} pointwise and again as sum_T f_T M_{chi_T o g^n}
/// (integer arithmetic); throws SolverError if the two ever differ.
Composition compose_block(const BoolFunction& f, const SignMatrix& g,
                          std::size_t entry_cap = kDefaultEntryCap);

/// Point mask z(r, c) with bit i set iff g(x^{i+1}, y^{i+1}) = -1.
Mask block_point(const SignMatrix& g, std::size_t n, std::size_t row, std::size_t col);

struct OrthogonalityReport {
    bool orthogonal = true;
    std::int64_t max_violation = 0;  // largest |entry| of M_T M_S^T or M_T^T M_S, S != T
    std::optional<std::pair<Mask, Mask>> worst_pair;
    std::size_t pairs_checked = 0;
};

OrthogonalityReport verify_orthogonality(const SignMatrix& g, std::size_t n,
                                         std::size_t entry_cap = kDefaultEntryCap);

struct RankTheoremReport {
    std::size_t rank_g = 0;
    std::uint64_t formula = 0;  // sum over T with f_T != 0 of rank_g^|T|
    std::size_t exact = 0;      // exact rank of the composed matrix
    bool equal = false;
};

/// Throws PreconditionError unless g is strongly balanced.
RankTheoremReport verify_rank_theorem(const BoolFunction& f, const SignMatrix& g,
                                      std::size_t entry_cap = kDefaultEntryCap);

struct WitnessMatrix {
    RealMatrix B;
    DualWitness source;
    std::optional<RealMatrix> mu;
    double l1 = 0.0;
    double correlation = 0.0;  // <M_{f o g^n}, B>
    double spectral_norm = 0.0;
    bool l1_ok = false;           // |l1 - 1| <= 1e-9
    bool correlation_ok = false;  // correlation >= epsilon - 1e-8
};

/// Without mu:  B[x,y] = 2^n / size(g)^n * v(z(x,y)); g must be strongly balanced.
/// With mu:     B[x,y] = 2^n * v(z(x,y)) * prod_i mu(x^i, y^i); mu must be a
///              distribution with sum mu * g = 0.
/// Violations throw PreconditionError.
WitnessMatrix build_witness(const DualWitness& w, const BoolFunction& f, const SignMatrix& g,
                            const std::optional<RealMatrix>& mu = std::nullopt,
                            std::size_t entry_cap = kDefaultEntryCap);

/// ||M_{chi_T o g^n}|| from ||(x)A_i|| = prod ||A_i|| without materializing.
double character_norm(Mask subset, const SignMatrix& g, std::size_t n);

/// (||M_g|| / sqrt(size))^d * size^(-n/2), the witness spectral-norm bound.
double witness_norm_bound(double norm_g, std::size_t size_g, std::size_t d, std::size_t n);

}  // namespace commbound
