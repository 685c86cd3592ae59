#include "k3lat/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace k3lat {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::not_symmetric: return "not_symmetric";
    case Errc::dependent_rows: return "dependent_rows";
    case Errc::degenerate_lattice: return "degenerate_lattice";
    case Errc::odd_lattice: return "odd_lattice";
    case Errc::not_two_elementary: return "not_two_elementary";
    case Errc::not_integral: return "not_integral";
    case Errc::lattice_mismatch: return "lattice_mismatch";
    case Errc::not_isometry: return "not_isometry";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::gluing_condition: return "gluing_condition";
    case Errc::imprimitive: return "imprimitive";
    case Errc::search_exhausted: return "search_exhausted";
    case Errc::parse_error: return "parse_error";
    case Errc::model_failure: return "model_failure";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Matrix<T>

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        require(r.size() == cols_, Errc::dimension_mismatch, "ragged matrix literal");
        for (const auto& v : r) data_.push_back(v);
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <typename T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

template <typename T>
void Matrix<T>::set_row(std::size_t i, const std::vector<T>& values) {
    require(values.size() == cols_, Errc::dimension_mismatch, "row length mismatch");
    std::copy(values.begin(), values.end(), data_.begin() + i * cols_);
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <typename T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

template <typename T>
Matrix<T> Matrix<T>::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    require(r0 + nr <= rows_ && c0 + nc <= cols_, Errc::dimension_mismatch, "submatrix out of range");
    Matrix s(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
    return s;
}

template <typename T>
bool Matrix<T>::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

template <typename T>
bool Matrix<T>::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
}

template <typename T>
Matrix<T> Matrix<T>::operator*(const Matrix& other) const {
    require(cols_ == other.rows_, Errc::dimension_mismatch, "matrix product shape mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const T& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

template <typename T>
Matrix<T> Matrix<T>::operator+(const Matrix& other) const {
    require(rows_ == other.rows_ && cols_ == other.cols_, Errc::dimension_mismatch, "matrix sum shape mismatch");
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

template <typename T>
Matrix<T> Matrix<T>::operator-(const Matrix& other) const {
    return *this + (-other);
}

template <typename T>
Matrix<T> Matrix<T>::operator-() const {
    Matrix out(*this);
    for (auto& v : out.data_) v = -v;
    return out;
}

template <typename T>
Matrix<T> Matrix<T>::scaled(const T& factor) const {
    Matrix out(*this);
    for (auto& v : out.data_) v *= factor;
    return out;
}

template <typename T>
std::vector<T> Matrix<T>::apply(const std::vector<T>& column) const {
    require(column.size() == cols_, Errc::dimension_mismatch, "matrix-vector shape mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * column[j];
    return out;
}

template class Matrix<Integer>;
template class Matrix<Rational>;

// ---------------------------------------------------------------------------
// Conversions and small helpers

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    require(top.cols() == bottom.cols(), Errc::dimension_mismatch, "vstack column mismatch");
    IntMatrix out(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i) out.set_row(i, top.row(i));
    for (std::size_t i = 0; i < bottom.rows(); ++i) out.set_row(top.rows() + i, bottom.row(i));
    return out;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            require(m(i, j).get_den() == 1, Errc::not_integral, "matrix has non-integral entries");
            out(i, j) = m(i, j).get_num();
        }
    return out;
}

RatVector to_rational(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Integer content(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

Integer dot(const IntVector& a, const IntVector& b) {
    require(a.size() == b.size(), Errc::dimension_mismatch, "dot product length mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---------------------------------------------------------------------------
// Determinant, rank, inverse

Integer determinant(const IntMatrix& m) {
    require(m.is_square(), Errc::dimension_mismatch, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Fraction-free Bareiss elimination.
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        const Rational inv = 1 / a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rational determinant(const RatMatrix& m) {
    require(m.is_square(), Errc::dimension_mismatch, "determinant of non-square matrix");
    RatMatrix a = m;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            a.swap_rows(k, p);
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            const Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

RatMatrix inverse(const RatMatrix& m) {
    require(m.is_square(), Errc::dimension_mismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    require(piv.size() == n && (n == 0 || piv.back() == n - 1), Errc::degenerate_lattice, "singular matrix");
    return aug.submatrix(0, n, n, n);
}

std::optional<RatMatrix> solve_left(const RatMatrix& a, const RatMatrix& b) {
    require(a.cols() == b.cols(), Errc::dimension_mismatch, "solve_left shape mismatch");
    // X a = b  <=>  a^T X^T = b^T
    const std::size_t k = a.rows();
    const std::size_t n = a.cols();
    RatMatrix aug(n, k + b.rows());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = a(j, i);
        for (std::size_t j = 0; j < b.rows(); ++j) aug(i, k + j) = b(j, i);
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() >= k) return std::nullopt;
    RatMatrix xt(k, b.rows());
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t j = 0; j < b.rows(); ++j) xt(piv[r], j) = aug(r, k + j);
    return xt.transpose();
}

// ---------------------------------------------------------------------------
// Smith and Hermite normal forms

std::vector<Integer> SmithForm::diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
}

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal())
        if (d != 0) ++r;
    return r;
}

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Quotient of a by b rounded to nearest, keeping remainders small.
Integer round_div(const Integer& a, const Integer& b) {
    Integer q;
    Integer twice = 2 * a + b;
    Integer den = 2 * b;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t nr = m.rows();
    const std::size_t nc = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(nr);
    IntMatrix v = IntMatrix::identity(nc);

    for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
        for (;;) {
            // Least-absolute-value pivot in the trailing block.
            std::size_t pi = nr, pj = nc;
            for (std::size_t i = t; i < nr; ++i)
                for (std::size_t j = t; j < nc; ++j) {
                    if (a(i, j) == 0) continue;
                    if (pi == nr || abs(a(i, j)) < abs(a(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == nr) return SmithForm{u, a, v};
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (a(i, t) == 0) continue;
                const Integer q = round_div(a(i, t), a(t, t));
                add_row_multiple(a, i, t, -q);
                add_row_multiple(u, i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (a(t, j) == 0) continue;
                const Integer q = round_div(a(t, j), a(t, t));
                add_col_multiple(a, j, t, -q);
                add_col_multiple(v, j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce d_t | every remaining entry.
            std::size_t bad = nr;
            for (std::size_t i = t + 1; i < nr && bad == nr; ++i)
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == nr) break;
            add_row_multiple(a, t, bad, Integer(1));
            add_row_multiple(u, t, bad, Integer(1));
        }
        if (a(t, t) < 0) {
            negate_row(a, t);
            negate_row(u, t);
        }
    }
    return SmithForm{u, a, v};
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t nr = a.rows();
    const std::size_t nc = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        for (;;) {
            std::size_t p = nr;
            for (std::size_t i = r; i < nr; ++i)
                if (a(i, c) != 0 && (p == nr || abs(a(i, c)) < abs(a(p, c)))) p = i;
            if (p == nr) break;
            a.swap_rows(r, p);
            bool done = true;
            for (std::size_t i = r + 1; i < nr; ++i) {
                if (a(i, c) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
                add_row_multiple(a, i, r, -q);
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) negate_row(a, r);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
            add_row_multiple(a, i, r, -q);
        }
        ++r;
    }
    return a.rows_range(0, r);
}

// ---------------------------------------------------------------------------
// Signature

std::ostream& operator<<(std::ostream& os, const Signature& s) {
    return os << "(" << s.plus << "," << s.minus << "," << s.zero << ")";
}

Signature signature(const RatMatrix& gram) {
    require(gram.is_symmetric(), Errc::not_symmetric, "signature requires a symmetric matrix");
    Signature sig;
    RatMatrix a = gram;
    while (a.rows() > 0) {
        const std::size_t n = a.rows();
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (a(i, i) != 0 && (p == n || abs(a(i, i)) > abs(a(p, p)))) p = i;

        if (p != n) {
            if (a(p, p) > 0) ++sig.plus;
            else ++sig.minus;
            RatMatrix next(n - 1, n - 1);
            for (std::size_t i = 0, ii = 0; i < n; ++i) {
                if (i == p) continue;
                for (std::size_t j = 0, jj = 0; j < n; ++j) {
                    if (j == p) continue;
                    next(ii, jj) = a(i, j) - a(i, p) * a(p, j) / a(p, p);
                    ++jj;
                }
                ++ii;
            }
            a = std::move(next);
            continue;
        }

        // Zero diagonal: look for a hyperbolic 2x2 pivot.
        std::size_t pi = n, pj = n;
        for (std::size_t i = 0; i < n && pi == n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (a(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == n) {
            sig.zero += n;
            break;
        }
        ++sig.plus;
        ++sig.minus;
        const Rational h = a(pi, pj);
        RatMatrix next(n - 2, n - 2);
        for (std::size_t i = 0, ii = 0; i < n; ++i) {
            if (i == pi || i == pj) continue;
            for (std::size_t j = 0, jj = 0; j < n; ++j) {
                if (j == pi || j == pj) continue;
                next(ii, jj) = a(i, j) - (a(i, pi) * a(pj, j) + a(i, pj) * a(pi, j)) / h;
                ++jj;
            }
            ++ii;
        }
        a = std::move(next);
    }
    return sig;
}

Signature signature(const IntMatrix& gram) { return signature(to_rational(gram)); }

// ---------------------------------------------------------------------------
// Saturation and kernels

IntMatrix saturate(const IntMatrix& s) {
    require(rank(s) == s.rows(), Errc::dependent_rows, "saturate: rows are linearly dependent");
    if (s.rows() == 0) return s;
    const SmithForm snf = smith_normal_form(s);
    // rowspan(s) = rowspan(D V^-1); the first k rows of V^-1 are a primitive basis.
    const IntMatrix vinv = to_integer(inverse(to_rational(snf.V)));
    return hermite_normal_form(vinv.rows_range(0, s.rows()));
}

Integer index_in_saturation(const IntMatrix& s) {
    require(rank(s) == s.rows(), Errc::dependent_rows, "index_in_saturation: rows are linearly dependent");
    Integer idx = 1;
    for (const auto& d : smith_normal_form(s).diagonal()) idx *= d;
    return idx;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() == 0) return IntMatrix::identity(n);
    const SmithForm snf = smith_normal_form(m);
    const std::size_t r = snf.rank();
    if (r == n) return IntMatrix(0, n);
    return hermite_normal_form(snf.U.rows_range(r, n - r));
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
    return hermite_normal_form(a) == hermite_normal_form(b);
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Integer& v) { return v.get_str(); }
std::string to_string(const Rational& v) { return v.get_str(); }

namespace {
template <typename T>
std::ostream& print_matrix(std::ostream& os, const Matrix<T>& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
        os << "]";
    }
    return os << "]";
}
}  // namespace

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return print_matrix(os, m); }
std::ostream& operator<<(std::ostream& os, const RatMatrix& m) { return print_matrix(os, m); }

}  // namespace k3lat
