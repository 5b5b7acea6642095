#pragma once

// Dense matrices used throughout: a generic row-major Matrix<T> and the
// validated SignMatrix (entries exactly -1 or +1).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "commbound/error.hpp"

namespace commbound {

template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw ArgumentError("matrix data length does not match dimensions");
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;
using IntMatrix = Matrix<std::int64_t>;

/// Conjugate transpose. For real element types this is the plain transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

/// Sign matrix M_f of a two-party function f: X x Y -> {-1,+1}.
class SignMatrix {
public:
    /// Throws ArgumentError unless rows, cols >= 1 and every entry is +-1.
    SignMatrix(std::size_t rows, std::size_t cols, std::vector<std::int8_t> entries);
    SignMatrix(std::initializer_list<std::initializer_list<int>> rows);

    static SignMatrix all_ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    /// size(A) = mn.
    std::size_t size() const { return entries_.size(); }

    int operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<std::int8_t>& entries() const { return entries_; }

    SignMatrix transpose() const;
    SignMatrix submatrix(const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) const;
    SignMatrix permuted(const std::vector<std::size_t>& row_order,
                        const std::vector<std::size_t>& col_order) const;

    RealMatrix to_real() const;
    IntMatrix to_int() const;

    friend bool operator==(const SignMatrix&, const SignMatrix&) = default;
    /// Lexicographic on row-major entries, -1 before +1; dimensions first.
    friend bool operator<(const SignMatrix& a, const SignMatrix& b);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int8_t> entries_;
};

/// Kronecker product; the left factor indexes the most significant block.
SignMatrix tensor(const SignMatrix& a, const SignMatrix& b);
RealMatrix tensor(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hadamard product; throws ArgumentError on dimension mismatch.
SignMatrix entrywise(const SignMatrix& a, const SignMatrix& b);
RealMatrix entrywise(const RealMatrix& a, const RealMatrix& b);

/// Plain matrix product.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);

/// <A,B> = Tr(A B^T), the entrywise sum of products.
double inner_product(const RealMatrix& a, const RealMatrix& b);
/// Sum of absolute values of entries.
double l1_norm(const RealMatrix& a);

/// The matrices named in the pattern-matrix discussion.
namespace named {
SignMatrix hadamard2();  // [[1,1],[1,-1]]
SignMatrix xor2();       // [[1,-1],[-1,1]]
SignMatrix s4();
SignMatrix s6();
}  // namespace named

// Text format: first line "m n", then m lines of n tokens in {+1,-1,+,-}.
SignMatrix parse_sign_matrix(std::istream& in);
SignMatrix read_sign_matrix(const std::string& path);
void write_sign_matrix(std::ostream& out, const SignMatrix& m);
std::string to_string(const SignMatrix& m);

// Same grid layout with nonnegative reals (distribution files).
RealMatrix parse_real_grid(std::istream& in);
RealMatrix read_real_grid(const std::string& path);

}  // namespace commbound
