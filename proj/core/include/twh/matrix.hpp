#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twh/cyc.hpp"

namespace twh {

// Dense matrix over an exact field (Rat or CycNum).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  Matrix(std::vector<std::vector<T>> rows) : r_(rows.size()), c_(rows.empty() ? 0 : rows[0].size()) {  // NOLINT
    for (auto& row : rows) {
      if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
      for (auto& x : row) a_.push_back(std::move(x));
    }
  }
  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix z(x.r_, y.c_);
    for (size_t i = 0; i < x.r_; ++i)
      for (size_t k = 0; k < x.c_; ++k) {
        if (is_zero(x(i, k))) continue;
        for (size_t j = 0; j < y.c_; ++j) z(i, j) += x(i, k) * y(k, j);
      }
    return z;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Matrix operator*(const T& k, Matrix x) {
    for (auto& v : x.a_) v = k * v;
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

  Matrix pow(int e) const {
    Matrix r = identity(r_), b = *this;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }

  // row echelon form in place; returns pivot columns
  std::vector<size_t> echelon() {
    std::vector<size_t> piv;
    size_t row = 0;
    for (size_t col = 0; col < c_ && row < r_; ++col) {
      size_t sel = r_;
      for (size_t i = row; i < r_; ++i)
        if (!is_zero((*this)(i, col))) {
          sel = i;
          break;
        }
      if (sel == r_) continue;
      for (size_t j = 0; j < c_; ++j) std::swap((*this)(row, j), (*this)(sel, j));
      T inv = T(1) / (*this)(row, col);
      for (size_t j = 0; j < c_; ++j) (*this)(row, j) = (*this)(row, j) * inv;
      for (size_t i = 0; i < r_; ++i) {
        if (i == row || is_zero((*this)(i, col))) continue;
        T f = (*this)(i, col);
        for (size_t j = 0; j < c_; ++j) (*this)(i, j) -= f * (*this)(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }
  size_t rank() const {
    Matrix m = *this;
    return m.echelon().size();
  }
  T det() const {
    if (r_ != c_) throw std::invalid_argument("det of non-square matrix");
    Matrix m = *this;
    T d(1);
    for (size_t col = 0; col < c_; ++col) {
      size_t sel = r_;
      for (size_t i = col; i < r_; ++i)
        if (!is_zero(m(i, col))) {
          sel = i;
          break;
        }
      if (sel == r_) return T(0);
      if (sel != col) {
        for (size_t j = 0; j < c_; ++j) std::swap(m(col, j), m(sel, j));
        d = -d;
      }
      d = d * m(col, col);
      T inv = T(1) / m(col, col);
      for (size_t i = col + 1; i < r_; ++i) {
        if (is_zero(m(i, col))) continue;
        T f = m(i, col) * inv;
        for (size_t j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
      }
    }
    return d;
  }
  std::optional<Matrix> inverse() const {
    if (r_ != c_) return std::nullopt;
    Matrix aug(r_, 2 * c_);
    for (size_t i = 0; i < r_; ++i) {
      for (size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_ + i) = T(1);
    }
    auto piv = aug.echelon();
    if (piv.size() < r_ || piv.back() >= c_) return std::nullopt;
    Matrix inv(r_, c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
  }

  std::string str() const {
    std::string s = "[";
    for (size_t i = 0; i < r_; ++i) {
      s += i ? ", [" : "[";
      for (size_t j = 0; j < c_; ++j) {
        if (j) s += ", ";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
Matrix<CycNum> to_cyc(const Matrix<T>& m) {
  Matrix<CycNum> r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = CycNum(m(i, j));
  return r;
}

}  // namespace twh
