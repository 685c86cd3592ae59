#pragma once

// Exact integer and rational matrices.
//
// Convention used across the library: vectors are coordinate columns,
// generators of a sublattice are matrix rows, and a Gram matrix has
// G(i, j) = (b_i, b_j).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "k3lat/error.hpp"

namespace k3lat {

using Integer = mpz_class;
using Rational = mpq_class;

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const;
    std::vector<T> col(std::size_t j) const;
    void set_row(std::size_t i, const std::vector<T>& values);
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    Matrix transpose() const;
    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Matrix rows_range(std::size_t r0, std::size_t nr) const { return submatrix(r0, 0, nr, cols_); }

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator-() const;
    Matrix scaled(const T& factor) const;
    std::vector<T> apply(const std::vector<T>& column) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
RatMatrix to_rational(const IntMatrix& m);
// Throws if some entry is not an integer.
IntMatrix to_integer(const RatMatrix& m);
RatVector to_rational(const IntVector& v);

Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);
// Solves X * a = b for X (row combinations); nullopt if b is not in the row space of a.
std::optional<RatMatrix> solve_left(const RatMatrix& a, const RatMatrix& b);

Integer content(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);

struct SmithForm {
    IntMatrix U;  // unimodular, rows x rows
    IntMatrix D;  // same shape as the input, diagonal
    IntMatrix V;  // unimodular, cols x cols
    std::vector<Integer> diagonal() const;
    std::size_t rank() const;
};

// U * M * V = D with d_i >= 0 and d_i | d_{i+1}.
SmithForm smith_normal_form(const IntMatrix& m);

// Row-style Hermite normal form of the row lattice; zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

struct Signature {
    std::size_t plus = 0;
    std::size_t minus = 0;
    std::size_t zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};
std::ostream& operator<<(std::ostream& os, const Signature& s);

// Exact congruence diagonalisation over Q.
Signature signature(const IntMatrix& gram);
Signature signature(const RatMatrix& gram);

// Basis (Hermite form) of the primitive closure of the row span of s.
IntMatrix saturate(const IntMatrix& s);
// [saturate(s) : rowspan(s)] = product of elementary divisors.
Integer index_in_saturation(const IntMatrix& s);

// Saturated basis (Hermite form) of { x in Z^rows : x * m = 0 }.
IntMatrix integer_kernel(const IntMatrix& m);

// True iff the row spans of a and b are the same sublattice of Z^n.
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

}  // namespace k3lat
