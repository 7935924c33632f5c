#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dioph/matrix.hpp"
#include "dioph/polynomial.hpp"

using namespace dioph;

namespace {

IntegerPolynomial random_poly(std::mt19937_64& rng, int deg, long h) {
  std::uniform_int_distribution<long> d(-h, h);
  std::vector<mpz_class> c(deg + 1);
  for (auto& x : c) x = d(rng);
  if (c.back() == 0) c.back() = 1;
  return IntegerPolynomial(c);
}

IntegerPolynomial convolve(const IntegerPolynomial& p, const IntegerPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<mpz_class> c(p.degree() + q.degree() + 1);
  for (int i = 0; i <= p.degree(); ++i)
    for (int j = 0; j <= q.degree(); ++j) c[i + j] += p.coeffs()[i] * q.coeffs()[j];
  return IntegerPolynomial(c);
}

// cofactor expansion, small matrices only
mpz_class leibniz(const IntMatrix& m) {
  std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    mpz_class term = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(Polynomials, MultiplyExamples) {
  IntegerPolynomial a{1, 1};
  EXPECT_EQ(multiply(a, a), (IntegerPolynomial{1, 2, 1}));
  EXPECT_EQ(multiply(a, a).height(), 2);
  IntegerPolynomial p{-2, 0, 1}, q{2, 0, 1};
  EXPECT_EQ(multiply(p, q), (IntegerPolynomial{-4, 0, 0, 0, 1}));
  EXPECT_EQ(multiply(p, q).height(), 4);
}

TEST(Polynomials, MultiplyMatchesConvolution) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto p = random_poly(rng, rng() % 6, 1000), q = random_poly(rng, rng() % 6, 1000);
    EXPECT_EQ(multiply(p, q), convolve(p, q));
  }
}

TEST(Polynomials, GcdExamples) {
  EXPECT_EQ(poly_gcd(IntegerPolynomial{-1, 0, 1}, IntegerPolynomial{-1, 1}), (IntegerPolynomial{-1, 1}));
  EXPECT_EQ(poly_gcd(IntegerPolynomial{-2, 0, 1}, IntegerPolynomial{-3, 0, 1}), (IntegerPolynomial{1}));
  IntegerPolynomial f{-1, 1};
  auto a = multiply(f, IntegerPolynomial{3, 2}), b = multiply(f, IntegerPolynomial{-7, 5});
  EXPECT_EQ(poly_gcd(a, b), f);
  EXPECT_EQ(poly_gcd(multiply(IntegerPolynomial{6}, a), b), f);
}

TEST(Polynomials, GcdDividesBoth) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto g = random_poly(rng, rng() % 3, 5);
    auto a = multiply(g, random_poly(rng, rng() % 3, 5)), b = multiply(g, random_poly(rng, rng() % 3, 5));
    auto d = poly_gcd(a, b);
    IntegerPolynomial q;
    EXPECT_TRUE(divide_exact(a, d, q));
    EXPECT_TRUE(divide_exact(b, d, q));
    EXPECT_GE(d.degree(), g.degree());
    EXPECT_GT(d.leading(), 0);
    EXPECT_EQ(d.content(), 1);
  }
}

TEST(Polynomials, ShiftFamily) {
  auto f = shift_family(IntegerPolynomial{1}, 2);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f.members[2], IntegerPolynomial::monomial(2));
  auto g = shift_family(IntegerPolynomial{1, 1}, 1);
  EXPECT_EQ(g.members[1], (IntegerPolynomial{0, 1, 1}));
  IntegerPolynomial p{3, -7, 0, 2, 5};
  auto h = shift_family(p, 3);
  EXPECT_EQ(h.size(), 4u);
  for (const auto& m : h.members) EXPECT_EQ(m.height(), p.height());
}

TEST(Polynomials, RankExamples) {
  PolyFamily f{{IntegerPolynomial{1}, IntegerPolynomial{0, 1}, IntegerPolynomial{0, 0, 1}}, 2};
  EXPECT_EQ(rank_of_family(f), 3u);
  IntegerPolynomial p{2, -1, 3};
  PolyFamily g{{p, IntegerPolynomial{4, -2, 6}}, 4};
  EXPECT_EQ(rank_of_family(g), 1u);
}

TEST(Polynomials, RankPlantedAndInvariant) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int t = 0; t < 50; ++t) {
    PolyFamily f;
    f.degree_bound = 5;
    for (int i = 0; i < 4; ++i) f.members.push_back(random_poly(rng, 5, 20));
    for (int i = 0; i < 2; ++i)
      f.members.push_back(mpz_class(d(rng)) * f.members[0] + mpz_class(d(rng)) * f.members[1] +
                          mpz_class(d(rng)) * f.members[3]);
    std::size_t r = rank_of_family(f);
    EXPECT_LE(r, 4u);
    IntMatrix m(f.size(), 6);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = f.members[i].coeff(j);
    EXPECT_EQ(r, bareiss_rank(m));
    PolyFamily g = f;
    for (auto& p : g.members) p = mpz_class(d(rng) | 1) * p;
    std::shuffle(g.members.begin(), g.members.end(), rng);
    EXPECT_EQ(rank_of_family(g), r);
  }
}

TEST(Polynomials, LainywegExamples) {
  EXPECT_TRUE(lainyweg_check(IntegerPolynomial{-2, 0, 1}, IntegerPolynomial{-3, 0, 1}));
  EXPECT_FALSE(lainyweg_check(IntegerPolynomial{0, -1, 1}, IntegerPolynomial{-1, 0, 1}));
  EXPECT_TRUE(lainyweg_check(IntegerPolynomial{1, 1}, IntegerPolynomial{-1, 1}));
}

TEST(Polynomials, SylvesterRankDeficiency) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 80; ++t) {
    auto g = random_poly(rng, rng() % 3, 4);
    auto p = multiply(g, random_poly(rng, 1 + rng() % 3, 6));
    auto q = multiply(g, random_poly(rng, 1 + rng() % 3, 6));
    auto om = omega_family(p, q);
    std::size_t want = static_cast<std::size_t>(p.degree() + q.degree() - poly_gcd(p, q).degree());
    EXPECT_EQ(rank_of_family(om), want);
  }
}

TEST(Polynomials, DeterminantAgainstLeibniz) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = (t % 4 == 0 && j == 0) ? 0 : d(rng);
    EXPECT_EQ(bareiss_determinant(m), leibniz(m));
  }
}

TEST(Polynomials, KernelVectorsAnnihilate) {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = d(rng);
    auto ker = rational_kernel(m);
    EXPECT_EQ(ker.size(), 5 - bareiss_rank(m));
    for (const auto& v : ker)
      for (std::size_t i = 0; i < 3; ++i) {
        mpz_class s = 0;
        for (std::size_t j = 0; j < 5; ++j) s += m(i, j) * v[j];
        EXPECT_EQ(s, 0);
      }
  }
}

TEST(Polynomials, EchelonBasisTracksRank) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int t = 0; t < 40; ++t) {
    EchelonBasis b(4);
    IntMatrix m(7, 4);
    for (std::size_t i = 0; i < 7; ++i) {
      std::vector<mpz_class> v(4);
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = v[j] = (j == 3 ? 0 : d(rng));
      b.add(v);
    }
    EXPECT_EQ(b.rank(), bareiss_rank(m));
  }
}

TEST(Polynomials, GelfondRatios) {
  EXPECT_EQ(multiply(IntegerPolynomial{1, 1}, IntegerPolynomial{1, 1}).height(), 2);
  EXPECT_EQ(multiply(IntegerPolynomial{-1, 1}, IntegerPolynomial{-1, 1}).height(), 2);
  GelfondScan ex = gelfond_scan(1, 1, 0, 0);
  EXPECT_TRUE(ex.exhaustive);
  EXPECT_EQ(ex.max.ratio, 2);
  double k2 = gelfond_constant(2);
  GelfondScan s = gelfond_scan(2, 5, 10000, 42);
  EXPECT_EQ(s.pairs, 10000u);
  EXPECT_GE(s.min.ratio.get_d(), 1.0 / k2);
  EXPECT_LE(s.max.ratio.get_d(), k2);
  GelfondScan full = gelfond_scan(2, 2, 0, 0);
  EXPECT_GE(full.min.ratio.get_d(), 1.0 / k2);
  EXPECT_LE(full.max.ratio.get_d(), k2);
  EXPECT_EQ(multiply(full.max.p, full.max.q).height(),
            full.max.ratio * full.max.p.height() * full.max.q.height());
}

TEST(Polynomials, GelfondEnvelopeDoesNotDrift) {
  double k3 = gelfond_constant(3);
  for (std::int64_t h : {2, 10, 100, 1000}) {
    GelfondScan s = gelfond_scan(3, h, 3000, 5);
    EXPECT_GE(s.min.ratio.get_d(), 1.0 / k3) << h;
    EXPECT_LE(s.max.ratio.get_d(), k3) << h;
  }
}

TEST(Polynomials, GelfondDeterministicForSeed) {
  GelfondScan a = gelfond_scan(2, 50, 2000, 99), b = gelfond_scan(2, 50, 2000, 99);
  EXPECT_EQ(a.min.ratio, b.min.ratio);
  EXPECT_EQ(a.max.p, b.max.p);
}
