#include "dioph/matrix.hpp"

#include <utility>

#include "dioph/error.hpp"

namespace dioph {

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

}  // namespace

mpz_class bareiss_determinant(IntMatrix m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  mpz_class d = m(n - 1, n - 1);
  return sign < 0 ? mpz_class(-d) : d;
}

std::size_t bareiss_rank(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != rank) swap_rows(m, p, rank);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = m(rank, c) * m(i, j) - m(i, c) * m(rank, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(rank, c);
    ++rank;
  }
  return rank;
}

std::vector<std::vector<mpz_class>> rational_kernel(const IntMatrix& in) {
  const std::size_t rows = in.rows(), cols = in.cols();
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = in(r, c);

  std::vector<long> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col_of_row.push_back(static_cast<long>(c));
    is_pivot[c] = true;
    ++r;
  }

  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(cols, mpq_class(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) v[pivot_col_of_row[i]] = -a[i][free];
    mpz_class den = 1;
    for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<mpz_class> w(cols);
    mpz_class g = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class s = v[j] * den;
      w[j] = s.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[j].get_mpz_t());
    }
    std::size_t first = 0;
    while (first < cols && w[first] == 0) ++first;
    if (w[first] < 0) g = -g;
    for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    basis.push_back(std::move(w));
  }
  return basis;
}

void EchelonBasis::reduce(std::vector<mpz_class>& v) const {
  if (v.size() != dim_) fail(ErrorCode::InvalidArgument, "vector dimension mismatch");
  for (const auto& [p, row] : rows_) {
    if (v[p] == 0) continue;
    mpz_class a = row[p], b = v[p];
    mpz_class g = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      v[j] = a * v[j] - b * row[j];
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[j].get_mpz_t());
    }
    if (g > 1)
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

bool EchelonBasis::independent(std::vector<mpz_class> v) const {
  reduce(v);
  for (const auto& x : v)
    if (x != 0) return true;
  return false;
}

bool EchelonBasis::add(std::vector<mpz_class> v) {
  reduce(v);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] != 0) {
      rows_.emplace_back(j, std::move(v));
      return true;
    }
  }
  return false;
}

}  // namespace dioph
