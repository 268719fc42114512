#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hwr/errors.hpp"
#include "hwr/rational.hpp"
#include "hwr/series.hpp"

namespace hwr {

// Square corner of a row-finite infinite matrix.
class RowFiniteMatrix {
 public:
  explicit RowFiniteMatrix(std::size_t size) : rows_(size, std::vector<Rational>(size)) {}

  explicit RowFiniteMatrix(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != rows_.size()) throw out_of_range("matrix corner must be square");
    }
  }

  static RowFiniteMatrix identity(std::size_t size) {
    RowFiniteMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m.rows_[i][i] = Rational(1);
    return m;
  }

  std::size_t size() const { return rows_.size(); }
  const Rational& operator()(std::size_t n, std::size_t k) const { return rows_[n][k]; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  // One past the last nonzero column of row n.
  std::size_t row_support(std::size_t n) const {
    for (std::size_t k = rows_[n].size(); k > 0; --k) {
      if (!rows_[n][k - 1].is_zero()) return k;
    }
    return 0;
  }

  RowFiniteMatrix corner(std::size_t size) const {
    if (size > rows_.size()) throw out_of_range("corner larger than matrix");
    std::vector<std::vector<Rational>> r(size);
    for (std::size_t i = 0; i < size; ++i) r[i].assign(rows_[i].begin(), rows_[i].begin() + static_cast<std::ptrdiff_t>(size));
    return RowFiniteMatrix(std::move(r));
  }

  bool is_lower_triangular() const {
    for (std::size_t n = 0; n < size(); ++n) {
      if (row_support(n) > n + 1) return false;
    }
    return true;
  }

  bool is_unitriangular() const {
    if (!is_lower_triangular()) return false;
    for (std::size_t n = 0; n < size(); ++n) {
      if (rows_[n][n] != Rational(1)) return false;
    }
    return true;
  }

  friend bool operator==(const RowFiniteMatrix& a, const RowFiniteMatrix& b) { return a.rows_ == b.rows_; }

  friend RowFiniteMatrix operator*(const RowFiniteMatrix& a, const RowFiniteMatrix& b) {
    if (a.size() != b.size()) throw out_of_range("matrix size mismatch");
    std::size_t s = a.size();
    RowFiniteMatrix m(s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        if (a.rows_[i][j].is_zero()) continue;
        for (std::size_t k = 0; k < s; ++k) {
          if (!b.rows_[j][k].is_zero()) m.rows_[i][k] += a.rows_[i][j] * b.rows_[j][k];
        }
      }
    }
    return m;
  }

  // (M a)_n = sum_k M(n, k) a_k
  std::vector<Rational> apply(std::span<const Rational> a) const {
    std::vector<Rational> out(size());
    for (std::size_t n = 0; n < size(); ++n) {
      for (std::size_t k = 0; k < size() && k < a.size(); ++k) {
        if (!rows_[n][k].is_zero() && !a[k].is_zero()) out[n] += rows_[n][k] * a[k];
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<Rational>> rows_;
};

// Phi_M on a series: generalized coefficients c_k [x^k] f are mapped through M.
inline Series phi(const RowFiniteMatrix& m, const Series& f, const RefSeq& c) {
  std::size_t s = std::min(m.size(), f.trunc() + 1);
  std::vector<Rational> a(s);
  for (std::size_t k = 0; k < s; ++k) a[k] = coefficient(f, k, c);
  std::vector<Rational> b = m.corner(s).apply(a);
  return from_gf_coefficients(b, c, s - 1);
}

}  // namespace hwr
