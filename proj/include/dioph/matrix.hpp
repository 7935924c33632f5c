#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace dioph {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transposed() const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
mpz_class bareiss_determinant(IntMatrix m);

/// Fraction-free rank of an arbitrary matrix.
std::size_t bareiss_rank(IntMatrix m);

/// Basis of the right kernel {v : M v = 0} by Gauss-Jordan over Q. Each
/// vector is scaled to a primitive integer vector whose first nonzero
/// entry is positive.
std::vector<std::vector<mpz_class>> rational_kernel(const IntMatrix& m);

/// Integer row echelon basis grown one vector at a time.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  /// Adds v when it is independent of the vectors so far; returns whether it was.
  bool add(std::vector<mpz_class> v);
  /// Independence test without modifying the basis.
  bool independent(std::vector<mpz_class> v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  void reduce(std::vector<mpz_class>& v) const;

  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::vector<mpz_class>>> rows_;
};

}  // namespace dioph
