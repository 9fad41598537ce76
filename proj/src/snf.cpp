#include "blowdown/snf.hpp"

#include "blowdown/error.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace blowdown {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ValidationError("row " + std::to_string(i) + " has wrong length");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += k * (*this)(source, j);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += k * (*this)(i, source);
}

void IntMatrix::negate_row(std::size_t r) {
  for (auto& v : row(r)) v = -v;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw ValidationError("matrix dimension mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t SnfResult::rank() const {
  return static_cast<std::size_t>(
      std::count_if(invariant_factors.begin(), invariant_factors.end(), [](const Integer& x) { return x != 0; }));
}

namespace {

// Position of the nonzero entry of least magnitude in the block a[t.., t..].
std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs = 0;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs_value(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = std::move(v);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    u.swap_rows(x, y);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    v.swap_cols(x, y);
  };
  auto row_add = [&](std::size_t target, std::size_t source, const Integer& k) {
    a.add_row_multiple(target, source, k);
    u.add_row_multiple(target, source, k);
  };
  auto col_add = [&](std::size_t target, std::size_t source, const Integer& k) {
    a.add_col_multiple(target, source, k);
    v.add_col_multiple(target, source, k);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    auto pivot = smallest_entry(a, t);
    if (!pivot) break;
    row_swap(t, pivot->first);
    col_swap(t, pivot->second);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_add(i, t, -(a(i, t) / a(t, t)));
        if (a(i, t) != 0) {
          row_swap(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        col_add(j, t, -(a(t, j) / a(t, t)));
        if (a(t, j) != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;

      // Row and column are cleared; enforce that the pivot divides the remaining block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      row_add(t, *offending, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }

  SnfResult out;
  out.invariant_factors.reserve(diag);
  for (std::size_t i = 0; i < diag; ++i) out.invariant_factors.push_back(a(i, i));
  out.d = std::move(a);
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

SpanningReport spans(const IntersectionLattice& lattice, std::span<const LatticeClass> classes) {
  std::vector<std::vector<Integer>> rows;
  rows.reserve(classes.size());
  for (const auto& c : classes) rows.push_back(lattice.coordinates(c));
  const auto snf = smith_normal_form(IntMatrix::from_rows(rows, lattice.rank()));

  SpanningReport report;
  report.invariant_factors = snf.invariant_factors;
  report.rank = snf.rank();
  report.spans = report.rank == lattice.rank() &&
                 std::all_of(snf.invariant_factors.begin(), snf.invariant_factors.end(),
                             [](const Integer& x) { return x == 1; });
  return report;
}

}  // namespace blowdown
