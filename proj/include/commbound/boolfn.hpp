#pragma once

// Boolean functions on {-1,+1}^n as truth tables, and their Fourier
// (Walsh-Hadamard) expansion.
//
// Index convention, shared by every module: a point x is a bitmask whose bit
// i is set iff x_{i+1} = -1; a subset T of [n] is a bitmask whose bit i is
// set iff i+1 is in T.
//
// Two normalizations coexist:
//   Fourier coefficients  f_T = 2^-n sum_x f(x) chi_T(x)
//   point inner products  <u,v> = sum_x u(x) v(x)          (no 2^-n)

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace commbound {

using Mask = std::uint32_t;

inline constexpr std::size_t kMaxArity = 20;

/// chi_T(x) = (-1)^{|T & x|}.
inline int character_eval(Mask subset, Mask point) {
    return (__builtin_popcount(subset & point) & 1) ? -1 : 1;
}

class BoolFunction {
public:
    /// Throws ArgumentError unless table.size() == 2^n and entries are +-1.
    BoolFunction(std::size_t n, std::vector<std::int8_t> table);

    static BoolFunction constant(std::size_t n, int value = 1);
    static BoolFunction parity(std::size_t n);
    /// -1 iff every input is -1.
    static BoolFunction and_fn(std::size_t n);
    /// -1 iff some input is -1.
    static BoolFunction or_fn(std::size_t n);
    /// -1 iff strictly more than half of the inputs are -1.
    static BoolFunction majority(std::size_t n);
    /// f(x) = -1 iff bit x of code is set; n <= 5.
    static BoolFunction from_code(std::size_t n, std::uint64_t code);

    std::size_t arity() const { return n_; }
    std::size_t points() const { return table_.size(); }
    int operator()(Mask x) const { return table_[x]; }
    const std::vector<std::int8_t>& table() const { return table_; }

    friend bool operator==(const BoolFunction&, const BoolFunction&) = default;

private:
    std::size_t n_;
    std::vector<std::int8_t> table_;
};

/// Pointwise product f(x) g(x).
BoolFunction pointwise(const BoolFunction& f, const BoolFunction& g);

struct RealPointFunction {
    std::size_t n = 0;
    std::vector<double> table;  // length 2^n

    static RealPointFunction from(const BoolFunction& f);
};

struct FourierSpectrum {
    std::size_t n = 0;
    std::vector<double> coeffs;  // indexed by subset mask
};

FourierSpectrum wht(const RealPointFunction& f);
FourierSpectrum wht(const BoolFunction& f);
RealPointFunction iwht(const FourierSpectrum& s);

/// Unnormalized integer transform: 2^n f_T = sum_x f(x) chi_T(x). Exact.
std::vector<std::int64_t> integer_transform(const BoolFunction& f);

/// Largest |T| with f_T != 0; coefficients are multiples of 2^-n, so the
/// zero test is exact.
std::size_t degree(const BoolFunction& f);

/// sum_x u(x) chi_T(x), the plain-sum inner product with a character.
double character_correlation(const RealPointFunction& u, Mask subset);

// Truth-table text format: "n=<arity>" then 2^n characters from {0,1} in
// index order, 1 meaning output -1.
BoolFunction parse_truth_table(std::istream& in);
std::string format_truth_table(const BoolFunction& f);

/// Built-in name "PARITY:3", "AND:2", "OR:4", "MAJ:3" (case-insensitive).
BoolFunction builtin_function(const std::string& spec);

/// A built-in name, else a truth-table file path.
BoolFunction load_function(const std::string& name_or_path);

}  // namespace commbound
