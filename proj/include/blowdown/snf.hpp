#pragma once

#include "blowdown/integer.hpp"
#include "blowdown/lattice.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace blowdown {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  IntMatrix transposed() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += k * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& k);
  /// col[target] += k * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& k);
  void negate_row(std::size_t r);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

/// U * M * V = D with U, V unimodular and D diagonal, nonnegative, each entry dividing
/// the next, zeros last.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  /// The min(rows, cols) diagonal entries of D in order.
  std::vector<Integer> invariant_factors;

  std::size_t rank() const;
};

SnfResult smith_normal_form(const IntMatrix& m);

struct SpanningReport {
  bool spans = false;
  std::size_t rank = 0;
  std::vector<Integer> invariant_factors;
};

/// Whether the classes generate the whole lattice over the integers.
SpanningReport spans(const IntersectionLattice& lattice, std::span<const LatticeClass> classes);

}  // namespace blowdown
