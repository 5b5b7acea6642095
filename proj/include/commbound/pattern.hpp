#pragma once

// Submatrix containment and enumeration of strongly balanced sign matrices.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "commbound/matrix.hpp"

namespace commbound {

enum class PatternMode { ordered, up_to_permutation };

struct PatternWitness {
    // M(rows[i], cols[j]) == P(i, j) for all i, j.
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

struct PatternMatch {
    bool found = false;
    std::optional<PatternWitness> witness;
};

/// Exhaustive search for P as a submatrix of M. In ordered mode the selected
/// rows and columns keep their relative order; in up_to_permutation mode any
/// row and column arrangement of the selection may match. No sign flips.
/// Throws ArgumentError if P is larger than M in either dimension.
PatternMatch contains_pattern(const SignMatrix& m, const SignMatrix& p,
                              PatternMode mode = PatternMode::up_to_permutation);

/// Lexicographically least matrix among all row/column permutations of m.
SignMatrix canonical_form(const SignMatrix& m);

struct BalancedSearchConstraints {
    std::size_t min_rank = 0;
    std::optional<SignMatrix> forbidden;
    std::size_t max_results = 1000;
};

/// Enumerate strongly balanced rows x cols sign matrices up to row/column
/// permutation, emitting each class once as its canonical form, in a fixed
/// discovery order. The visitor may return false to stop early.
/// Throws ArgumentError for odd or zero dimensions and for dimensions above 8.
/// Returns the number of matrices emitted.
std::size_t search_strongly_balanced(std::size_t rows, std::size_t cols,
                                     const BalancedSearchConstraints& constraints,
                                     const std::function<bool(const SignMatrix&)>& visit);

std::vector<SignMatrix> search_strongly_balanced(std::size_t rows, std::size_t cols,
                                                 const BalancedSearchConstraints& constraints);

}  // namespace commbound
