#include "commbound/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace commbound {

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

SignMatrix::SignMatrix(std::size_t rows, std::size_t cols, std::vector<std::int8_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) throw ArgumentError("sign matrix needs at least one row and column");
    if (entries_.size() != rows_ * cols_) {
        throw ArgumentError("sign matrix has " + std::to_string(entries_.size()) +
                            " entries, expected " + std::to_string(rows_ * cols_));
    }
    for (auto e : entries_) {
        if (e != 1 && e != -1) throw ArgumentError("sign matrix entry is not +1 or -1");
    }
}

namespace {
std::vector<std::int8_t> flatten(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::int8_t> out;
    const std::size_t cols = rows.size() ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
        if (row.size() != cols) throw ArgumentError("ragged sign matrix literal");
        for (int v : row) out.push_back(static_cast<std::int8_t>(v));
    }
    return out;
}
}  // namespace

SignMatrix::SignMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : SignMatrix(rows.size(), rows.size() ? rows.begin()->size() : 0, flatten(rows)) {}

SignMatrix SignMatrix::all_ones(std::size_t rows, std::size_t cols) {
    return SignMatrix(rows, cols, std::vector<std::int8_t>(rows * cols, 1));
}

SignMatrix SignMatrix::transpose() const {
    std::vector<std::int8_t> out(entries_.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[c * rows_ + r] = entries_[r * cols_ + c];
    return SignMatrix(cols_, rows_, std::move(out));
}

SignMatrix SignMatrix::submatrix(const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols) const {
    std::vector<std::int8_t> out;
    out.reserve(rows.size() * cols.size());
    for (auto r : rows) {
        if (r >= rows_) throw ArgumentError("submatrix row index out of range");
        for (auto c : cols) {
            if (c >= cols_) throw ArgumentError("submatrix column index out of range");
            out.push_back(entries_[r * cols_ + c]);
        }
    }
    return SignMatrix(rows.size(), cols.size(), std::move(out));
}

SignMatrix SignMatrix::permuted(const std::vector<std::size_t>& row_order,
                                const std::vector<std::size_t>& col_order) const {
    if (row_order.size() != rows_ || col_order.size() != cols_) {
        throw ArgumentError("permutation length does not match matrix dimensions");
    }
    return submatrix(row_order, col_order);
}

RealMatrix SignMatrix::to_real() const {
    RealMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.data()[i] = entries_[i];
    return out;
}

IntMatrix SignMatrix::to_int() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.data()[i] = entries_[i];
    return out;
}

bool operator<(const SignMatrix& a, const SignMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.entries_ < b.entries_;
}

namespace {
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T s = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
        }
    return out;
}

void require_same_dims(std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc) {
    if (ar != br || ac != bc) {
        throw ArgumentError("dimension mismatch: " + std::to_string(ar) + "x" + std::to_string(ac) +
                            " vs " + std::to_string(br) + "x" + std::to_string(bc));
    }
}
}  // namespace

SignMatrix tensor(const SignMatrix& a, const SignMatrix& b) {
    std::vector<std::int8_t> out(a.size() * b.size());
    const std::size_t cols = a.cols() * b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out[(i * b.rows() + k) * cols + j * b.cols() + l] =
                        static_cast<std::int8_t>(a(i, j) * b(k, l));
    return SignMatrix(a.rows() * b.rows(), cols, std::move(out));
}

RealMatrix tensor(const RealMatrix& a, const RealMatrix& b) { return kron(a, b); }
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) { return kron(a, b); }

SignMatrix entrywise(const SignMatrix& a, const SignMatrix& b) {
    require_same_dims(a.rows(), a.cols(), b.rows(), b.cols());
    std::vector<std::int8_t> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::int8_t>(a.entries()[i] * b.entries()[i]);
    return SignMatrix(a.rows(), a.cols(), std::move(out));
}

RealMatrix entrywise(const RealMatrix& a, const RealMatrix& b) {
    require_same_dims(a.rows(), a.cols(), b.rows(), b.cols());
    RealMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = a.data()[i] * b.data()[i];
    return out;
}

namespace {
template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw ArgumentError("inner dimensions differ in matrix product");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T s = a(i, k);
            if (s == T{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += s * b(k, j);
        }
    return out;
}
}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) { return matmul(a, b); }
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) { return matmul(a, b); }

double inner_product(const RealMatrix& a, const RealMatrix& b) {
    require_same_dims(a.rows(), a.cols(), b.rows(), b.cols());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
}

double l1_norm(const RealMatrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += std::abs(v);
    return s;
}

namespace named {
SignMatrix hadamard2() { return {{1, 1}, {1, -1}}; }
SignMatrix xor2() { return {{1, -1}, {-1, 1}}; }
SignMatrix s4() {
    return {{1, -1, 1, -1}, {1, -1, -1, 1}, {-1, 1, 1, -1}, {-1, 1, -1, 1}};
}
SignMatrix s6() {
    return {{1, 1, 1, -1, -1, -1},  {1, 1, -1, 1, -1, -1}, {1, -1, -1, -1, 1, 1},
            {-1, -1, 1, 1, 1, -1},  {-1, 1, -1, -1, 1, 1}, {-1, -1, 1, 1, -1, 1}};
}
}  // namespace named

namespace {
void read_dims(std::istream& in, std::size_t& rows, std::size_t& cols) {
    long long m = 0, n = 0;
    if (!(in >> m >> n)) throw ArgumentError("expected header line \"m n\"");
    if (m <= 0 || n <= 0) throw ArgumentError("matrix dimensions must be positive");
    rows = static_cast<std::size_t>(m);
    cols = static_cast<std::size_t>(n);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    return in;
}
}  // namespace

SignMatrix parse_sign_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    read_dims(in, rows, cols);
    std::vector<std::int8_t> entries;
    entries.reserve(rows * cols);
    std::string tok;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        if (!(in >> tok)) throw ArgumentError("sign matrix truncated after " + std::to_string(i) + " entries");
        if (tok == "+1" || tok == "+" || tok == "1") {
            entries.push_back(1);
        } else if (tok == "-1" || tok == "-") {
            entries.push_back(-1);
        } else {
            throw ArgumentError("invalid sign matrix token '" + tok + "'");
        }
    }
    if (in >> tok) throw ArgumentError("trailing token '" + tok + "' after sign matrix");
    return SignMatrix(rows, cols, std::move(entries));
}

SignMatrix read_sign_matrix(const std::string& path) {
    auto in = open_input(path);
    return parse_sign_matrix(in);
}

void write_sign_matrix(std::ostream& out, const SignMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << (m(r, c) > 0 ? "+1" : "-1");
        }
        out << '\n';
    }
}

std::string to_string(const SignMatrix& m) {
    std::ostringstream os;
    write_sign_matrix(os, m);
    return os.str();
}

RealMatrix parse_real_grid(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    read_dims(in, rows, cols);
    std::vector<double> values;
    values.reserve(rows * cols);
    std::string tok;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        if (!(in >> tok)) throw ArgumentError("grid truncated after " + std::to_string(i) + " entries");
        try {
            std::size_t used = 0;
            values.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ArgumentError("invalid number '" + tok + "' in grid");
        }
    }
    if (in >> tok) throw ArgumentError("trailing token '" + tok + "' after grid");
    return RealMatrix(rows, cols, std::move(values));
}

RealMatrix read_real_grid(const std::string& path) {
    auto in = open_input(path);
    return parse_real_grid(in);
}

}  // namespace commbound
