#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace kroncells {

using Rational = mpq_class;
using BigInt = mpz_class;

template <std::uint32_t P>
class Fp {
  static_assert(P >= 2);

 public:
  static constexpr std::uint32_t modulus = P;

  constexpr Fp() = default;
  constexpr Fp(std::int64_t x) : v_(static_cast<std::uint32_t>(((x % std::int64_t(P)) + P) % P)) {}

  std::uint32_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) {
    std::uint32_t s = a.v_ + b.v_;
    return raw(s >= P ? s - P : s);
  }
  friend Fp operator-(Fp a, Fp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + P - b.v_); }
  friend Fp operator*(Fp a, Fp b) { return raw(std::uint32_t(std::uint64_t(a.v_) * b.v_ % P)); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : P - v_); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  friend bool operator==(Fp, Fp) = default;

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in prime field");
    std::uint64_t base = v_, e = P - 2, r = 1;
    while (e) {
      if (e & 1) r = r * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return raw(std::uint32_t(r));
  }

 private:
  static Fp raw(std::uint32_t v) {
    Fp f;
    f.v_ = v;
    return f;
  }
  std::uint32_t v_ = 0;
};

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static std::string name() { return "Q"; }
  static std::string str(const Rational& x) { return x.get_str(); }
  static Rational parse(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
  }
  static constexpr std::uint32_t characteristic = 0;
};

template <std::uint32_t P>
struct FieldTraits<Fp<P>> {
  static bool is_zero(const Fp<P>& x) { return x.value() == 0; }
  static std::string name() { return "F" + std::to_string(P); }
  static std::string str(const Fp<P>& x) { return std::to_string(x.value()); }
  static Fp<P> parse(const std::string& s) { return Fp<P>(std::stoll(s)); }
  static constexpr std::uint32_t characteristic = P;
};

template <class T>
bool is_zero(const T& x) {
  return FieldTraits<T>::is_zero(x);
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero_matrix() const {
    for (const T& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  static Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& p : parts) cols += p.cols();
    Matrix m(rows, cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
      m.set_block(0, c, p);
      c += p.cols();
    }
    return m;
  }
  static Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& p : parts) rows += p.rows();
    Matrix m(rows, cols);
    std::size_t r = 0;
    for (const auto& p : parts) {
      m.set_block(r, 0, p);
      r += p.rows();
    }
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
struct Echelon {
  Matrix<T> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

template <class T>
Echelon<T> rref(Matrix<T> a) {
  Echelon<T> e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(piv, row);
    T inv = T(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      T f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!is_zero(a(row, j))) a(i, j) -= f * a(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(a);
  return e;
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return rref(a).rank();
}

// Columns form the canonical kernel basis: one vector per free column, with a 1 there.
template <class T>
Matrix<T> nullspace_from(const Echelon<T>& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix<T> k(cols, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.reduced(r, free[f]);
  }
  return k;
}

template <class T>
Matrix<T> nullspace(const Matrix<T>& a) {
  return nullspace_from(rref(a), a.cols());
}

// Rows span the left kernel {y : y a = 0}, in reduced echelon form.
template <class T>
Matrix<T> left_nullspace(const Matrix<T>& a) {
  Matrix<T> k = nullspace(a.transpose()).transpose();
  return rref(k).reduced;
}

// A full-row-rank matrix in reduced echelon form has the identity on its pivot columns;
// the unit vectors at those columns give a right inverse.
template <class T>
Matrix<T> section_of_echelon(const Matrix<T>& pi) {
  Echelon<T> e = rref(pi);
  if (e.rank() != pi.rows()) throw InvalidArgument("projection is not surjective");
  if (!(e.reduced == pi)) throw InvalidArgument("projection not in reduced echelon form");
  Matrix<T> s(pi.cols(), pi.rows());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s(e.pivots[r], r) = T(1);
  return s;
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(FieldTraits<T>::str(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class T>
Matrix<T> matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  Matrix<T> m(rows, cols);
  if (j.size() != rows) throw InvalidArgument("matrix row count mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw InvalidArgument("matrix column count mismatch");
    for (std::size_t jj = 0; jj < cols; ++jj) m(i, jj) = FieldTraits<T>::parse(j[i][jj].get<std::string>());
  }
  return m;
}

// Reduce a rational modulo P; nullopt when P divides the denominator.
template <std::uint32_t P>
std::optional<Fp<P>> reduce_mod(const Rational& x) {
  BigInt num = x.get_num() % P, den = x.get_den() % P;
  if (den == 0) return std::nullopt;
  if (num < 0) num += P;
  return Fp<P>(num.get_si()) / Fp<P>(den.get_si());
}

// Rational a/b with |a|, b <= sqrt(m/2) congruent to x mod m, if any.
inline std::optional<Rational> rational_reconstruct(const BigInt& x, const BigInt& m) {
  BigInt bound;
  mpz_sqrt(bound.get_mpz_t(), BigInt(m / 2).get_mpz_t());
  BigInt r0 = m, r1 = x % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  BigInt check = (out.get_num() - x * out.get_den()) % m;
  if (check != 0) return std::nullopt;
  return out;
}

}  // namespace kroncells
