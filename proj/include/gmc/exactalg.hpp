#pragma once

// Exact integer and rational linear algebra. No floating point in here.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gmc/error.hpp"

namespace gmc {

using Int = boost::multiprecision::cpp_int;
// cpp_rational keeps itself in lowest terms with a positive denominator.
using Rat = boost::multiprecision::cpp_rational;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int numerator(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int denominator(const Rat& x) { return boost::multiprecision::denominator(x); }

inline Int abs(const Int& x) { return x < 0 ? Int(-x) : x; }
inline Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }
inline Int floor(const Rat& x) { return floor_div(numerator(x), denominator(x)); }
inline Int ceil(const Rat& x) { return ceil_div(numerator(x), denominator(x)); }

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

/// "p" when integral, otherwise "p/q".
inline std::string to_string(const Rat& x) {
  if (is_integer(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}
inline std::string to_string(const Int& x) { return x.str(); }

/// Parses "p", "-p" or "p/q". The result is reduced.
inline Rat parse_rat(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Int {
    if (s.empty()) fail(ErrorCode::BadInput, "malformed rational '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail(ErrorCode::BadInput, "malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        fail(ErrorCode::BadInput, "malformed rational '" + std::string(text) + "'");
    Int v(std::string(s.substr(i)));
    return s[0] == '-' ? Int(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::BadInput, "zero denominator in '" + std::string(text) + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(num, den);
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

// ---------------------------------------------------------------------------
// Vectors

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) fail(ErrorCode::BadInput, "dot: dimension mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const QVec& a, const ZVec& b) {
  if (a.size() != b.size()) fail(ErrorCode::BadInput, "dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
bool is_zero(const std::vector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return x == 0; });
}

inline QVec to_q(const ZVec& v) { return QVec(v.begin(), v.end()); }

inline ZVec to_z(const QVec& v) {
  ZVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integer(x)) fail(ErrorCode::BadInput, "expected an integral vector");
    out.push_back(numerator(x));
  }
  return out;
}

/// Positive rescaling of v to a primitive integer vector (zero stays zero).
inline ZVec primitive(const QVec& v) {
  Int den = 1;
  for (const auto& x : v) den = lcm(den, denominator(x));
  ZVec out;
  out.reserve(v.size());
  Int g = 0;
  for (const auto& x : v) {
    Int z = numerator(x) * (den / denominator(x));
    g = gcd(g, z);
    out.push_back(std::move(z));
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

inline ZVec primitive(const ZVec& v) { return primitive(to_q(v)); }

template <class T>
std::vector<T> scaled(const std::vector<T>& v, const T& c) {
  std::vector<T> out(v);
  for (auto& x : out) x *= c;
  return out;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

template <class T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

// ---------------------------------------------------------------------------
// Dense row-major matrices

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(ErrorCode::BadInput, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) fail(ErrorCode::BadInput, "matrix needs at least one row or explicit width");
    return from_rows(rows, rows.front().size());
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
  }
  /// col[dst] += c * col[src]
  void add_col(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) fail(ErrorCode::BadInput, "matrix-vector dimension mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::BadInput, "matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMat = Matrix<Rat>;
using ZMat = Matrix<Int>;

inline QMat to_q(const ZMat& m) {
  QMat q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

// ---------------------------------------------------------------------------
// Rational elimination

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(QMat& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rat inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) a.add_row(i, r, -a(i, c));
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMat a) { return rref(a).size(); }

inline std::size_t rank(const std::vector<QVec>& vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(QMat::from_rows(vectors, dim));
}

inline std::size_t rank(const std::vector<ZVec>& vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(to_q(ZMat::from_rows(vectors, dim)));
}

/// Basis of {x : A x = 0}, one vector per free column, in column order.
inline std::vector<QVec> kernel_basis(const QMat& a) {
  QMat r = a;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVec v(a.cols(), Rat(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rat determinant(QMat a) {
  if (a.rows() != a.cols()) fail(ErrorCode::BadInput, "determinant of a non-square matrix");
  Rat det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i)
      if (a(i, c) != 0) a.add_row(i, c, -a(i, c) / a(c, c));
  }
  return det;
}

inline Int determinant(const ZMat& a) { return numerator(determinant(to_q(a))); }

inline QMat inverse(const QMat& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) fail(ErrorCode::BadInput, "inverse of a non-square matrix");
  QMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail(ErrorCode::BadInput, "singular matrix");
  QMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Inverse of a unimodular integer matrix.
inline ZMat inverse_unimodular(const ZMat& a) {
  QMat inv = inverse(to_q(a));
  ZMat out(inv.rows(), inv.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) {
      if (!is_integer(inv(i, j))) fail(ErrorCode::BadInput, "matrix is not unimodular");
      out(i, j) = numerator(inv(i, j));
    }
  return out;
}

/// Coefficients c with sum_i c_i basis[i] = v, or nothing if v is outside the span.
inline std::optional<QVec> coordinates_in(const std::vector<QVec>& basis, const QVec& v) {
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  QMat aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis[j][i];
    aug(i, k) = v[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  QVec c(k, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) c[pivots[i]] = aug(i, k);
  return c;
}

// ---------------------------------------------------------------------------
// Integer normal forms

struct SmithForm {
  ZMat U;  // rows x rows, unimodular
  ZMat D;  // diagonal, d1 | d2 | ..., nonnegative
  ZMat V;  // cols x cols, unimodular
};

/// U * A * V = D with D in Smith normal form.
inline SmithForm smith_normal_form(const ZMat& a) {
  if (a.empty()) fail(ErrorCode::BadInput, "smith_normal_form: empty matrix");
  const std::size_t m = a.rows(), n = a.cols();
  ZMat d = a;
  ZMat u = ZMat::identity(m);
  ZMat v = ZMat::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = floor_div(d(i, t), d(t, t));
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = floor_div(d(t, j), d(t, t));
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold a offending row into the pivot row and retry.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      d.add_row(t, bad, Int(1));
      u.add_row(t, bad, Int(1));
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

/// Row-style Hermite normal form of the row lattice; zero rows dropped.
inline std::vector<ZVec> hermite_rows(std::vector<ZVec> rows, std::size_t dim) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    for (;;) {
      std::size_t p = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (p == rows.size() || abs(rows[i][c]) < abs(rows[p][c]))) p = i;
      if (p == rows.size()) break;
      std::swap(rows[r], rows[p]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = floor_div(rows[i][c], rows[r][c]);
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        Int q = floor_div(rows[i][c], rows[r][c]);
        if (q != 0)
          for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

/// Basis (in Hermite normal form) of span(B) intersected with the integer lattice.
inline std::vector<ZVec> saturate(const std::vector<ZVec>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != dim) fail(ErrorCode::BadInput, "saturate: vectors differ in dimension");
  if (std::all_of(vectors.begin(), vectors.end(), [](const ZVec& v) { return is_zero(v); })) return {};
  auto snf = smith_normal_form(ZMat::from_rows(vectors, dim));
  std::size_t k = 0;
  while (k < std::min(snf.D.rows(), snf.D.cols()) && snf.D(k, k) != 0) ++k;
  // Rows of V^{-1} form a basis of Z^n; the first k span the row space of A.
  ZMat vinv = inverse_unimodular(snf.V);
  std::vector<ZVec> basis;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(vinv.row(i));
  return hermite_rows(std::move(basis), dim);
}

/// Positive generator of the additive subgroup of Q generated by the values.
inline Rat gcd_of_rationals(const std::vector<Rat>& values) {
  Int den = 1;
  for (const auto& x : values) den = lcm(den, denominator(x));
  Int g = 0;
  for (const auto& x : values) g = gcd(g, numerator(x) * (den / denominator(x)));
  if (g == 0) fail(ErrorCode::AllZero, "gcd_of_rationals: every value is zero");
  return Rat(g, den);
}

}  // namespace gmc
