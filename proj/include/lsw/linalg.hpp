#pragma once

// Dense matrices over Q: products, exact rank and determinant.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lsw/rational.hpp"

namespace lsw {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
  const Rational& at(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  RationalMatrix& operator+=(const RationalMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    RationalMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a.at(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += x * b.at(k, j);
      }
    return r;
  }

  friend RationalMatrix operator*(const Rational& c, RationalMatrix m) {
    for (auto& x : m.data_) x *= c;
    return m;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

// Row echelon form in place; returns the pivot columns and the sign of the row swaps.
inline std::pair<std::vector<std::size_t>, int> eliminate(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  int sign = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
      sign = -sign;
    }
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (m.at(i, col) == 0) continue;
      Rational f = m.at(i, col) / m.at(row, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {pivots, sign};
}

}  // namespace detail

inline std::size_t rank(RationalMatrix m) { return detail::eliminate(m).first.size(); }

inline Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  auto [pivots, sign] = detail::eliminate(m);
  if (pivots.size() < m.rows()) return 0;
  Rational d = sign;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= m.at(i, i);
  return d;
}

inline std::string to_string(const RationalMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += to_string(m.at(i, j));
    }
    out += ']';
  }
  return out + "]";
}

}  // namespace lsw
