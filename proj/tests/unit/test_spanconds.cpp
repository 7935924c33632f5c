#include <gtest/gtest.h>

#include <random>

#include "dioph/error.hpp"
#include "dioph/spanconds.hpp"

using namespace dioph;

namespace {

IntegerPolynomial random_poly(std::mt19937_64& rng, int deg, long h) {
  std::uniform_int_distribution<long> d(-h, h);
  std::vector<mpz_class> c(deg + 1);
  for (auto& x : c) x = d(rng);
  if (c.back() == 0) c.back() = 1;
  return IntegerPolynomial(c);
}

BestApproxSequence seq_of(int n, std::vector<IntegerPolynomial> polys) {
  BestApproxSequence s;
  s.n = n;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    BestApproxRecord r;
    r.k = i + 1;
    r.poly = polys[i];
    r.height = polys[i].height();
    r.value = RationalInterval::point(mpq_class(1, static_cast<long>(i + 2)));
    r.degree = polys[i].degree();
    s.records.push_back(r);
  }
  return s;
}

// entry (r, c) of Lambda_n from index arithmetic alone
mpz_class lambda_entry(const GluedTriple& t, std::size_t r, std::size_t c) {
  const std::size_t half = t.n / 2, size = 3 * half;
  std::size_t block = c / half, shift = c % half;
  std::size_t i = (r + size - shift) % size;
  if (i > static_cast<std::size_t>(t.n)) return 0;
  return t.h[block * (t.n + 1) + i];
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SpanConds, Lambda4MatchesDisplayedPattern) {
  // h_{j,i} = 10*(j+1) + i labels every symbol uniquely
  std::vector<IntegerPolynomial> b;
  for (long j = 0; j < 3; ++j) {
    std::vector<mpz_class> c;
    for (long i = 0; i <= 4; ++i) c.push_back(10 * (j + 1) + i);
    b.emplace_back(c);
  }
  auto t = GluedTriple::from_polys(4, b[0], b[1], b[2]);
  IntMatrix m = build_lambda(t);
  const long display[6][6] = {{10, 0, 20, 0, 30, 0},   {11, 10, 21, 20, 31, 30},
                              {12, 11, 22, 21, 32, 31}, {13, 12, 23, 22, 33, 32},
                              {14, 13, 24, 23, 34, 33}, {0, 14, 0, 24, 0, 34}};
  ASSERT_EQ(m.rows(), 6u);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(m(r, c), display[r][c]) << r << "," << c;
}

TEST(SpanConds, LambdaIndexArithmetic) {
  std::mt19937_64 rng(1);
  for (int n : {2, 4, 6, 8}) {
    for (int t = 0; t < 20; ++t) {
      auto tr = GluedTriple::from_polys(n, random_poly(rng, n, 50), random_poly(rng, n, 50), random_poly(rng, n, 50));
      IntMatrix m = build_lambda(tr);
      ASSERT_EQ(m.rows(), static_cast<std::size_t>(3 * n / 2));
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) EXPECT_EQ(m(r, c), lambda_entry(tr, r, c));
    }
  }
}

TEST(SpanConds, PhiExamples) {
  auto id = GluedTriple::from_polys(2, IntegerPolynomial{1}, IntegerPolynomial{0, 1}, IntegerPolynomial{0, 0, 1});
  EXPECT_EQ(abs(phi(id)), 1);
  IntegerPolynomial p{3, -1, 2}, q{1, 1, 5};
  EXPECT_EQ(phi(GluedTriple::from_polys(2, p, mpz_class(2) * p, q)), 0);
  EXPECT_EQ(code_of([] {
              phi(GluedTriple::from_polys(3, IntegerPolynomial{1}, IntegerPolynomial{0, 1}, IntegerPolynomial{0, 0, 1}));
            }),
            ErrorCode::OddN);
}

TEST(SpanConds, Lambda2IsCoefficientDeterminant) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    auto a = random_poly(rng, 2, 9), b = random_poly(rng, 2, 9), c = random_poly(rng, 2, 9);
    IntMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, 0) = a.coeff(i);
      m(i, 1) = b.coeff(i);
      m(i, 2) = c.coeff(i);
    }
    EXPECT_EQ(abs(phi(GluedTriple::from_polys(2, a, b, c))), abs(bareiss_determinant(m)));
  }
}

TEST(SpanConds, LemurPlantedRelation) {
  IntegerPolynomial a{2, -1, 1}, b{-3, 4, 1};
  auto t = GluedTriple::from_polys(2, a, b, a + b);
  LemurResult r = lemur_check(t);
  EXPECT_FALSE(r.phi_nonzero);
  EXPECT_FALSE(r.span_full);
  EXPECT_FALSE(r.kernel_trivial);
  ASSERT_EQ(r.witness.size(), 3u);
  EXPECT_EQ(r.witness[0], IntegerPolynomial{1});
  EXPECT_EQ(r.witness[1], IntegerPolynomial{1});
  EXPECT_EQ(r.witness[2], IntegerPolynomial{-1});
  LemurResult ok = lemur_check(GluedTriple::from_polys(2, IntegerPolynomial{1}, IntegerPolynomial{0, 1}, IntegerPolynomial{0, 0, 1}));
  EXPECT_TRUE(ok.phi_nonzero && ok.span_full && ok.kernel_trivial);
}

TEST(SpanConds, LemurEquivalenceOnRandomTriples) {
  std::mt19937_64 rng(3);
  for (int n : {2, 4, 6}) {
    int disagreements = 0, singular = 0;
    for (int t = 0; t < 200; ++t) {
      IntegerPolynomial a = random_poly(rng, n, 3), b = random_poly(rng, n, 3), c;
      if (t % 3 == 0) {
        // plant A a + B b + C c = 0 with deg A, B < n/2
        auto f = random_poly(rng, n / 2 - 1, 2);
        auto g = random_poly(rng, 1 + n / 2, 2);
        a = multiply(f, g);
        b = multiply(random_poly(rng, n / 2 - 1, 2), g);
        c = multiply(random_poly(rng, n / 2 - 1, 2), g);
      } else {
        c = random_poly(rng, n, 3);
      }
      auto tr = GluedTriple::from_polys(n, a, b, c);
      LemurResult r = lemur_check(tr);
      if (!(r.phi_nonzero == r.span_full && r.span_full == r.kernel_trivial)) ++disagreements;
      if (!r.phi_nonzero) ++singular;
      PolyFamily f;
      f.degree_bound = 3 * n / 2 - 1;
      for (const auto& p : {a, b, c})
        for (int s = 0; s < n / 2; ++s) f.members.push_back(p.shifted(s));
      EXPECT_EQ(r.phi_nonzero, rank_of_family(f) == static_cast<std::size_t>(3 * n / 2));
    }
    EXPECT_EQ(disagreements, 0) << n;
    EXPECT_GT(singular, 0) << n;
  }
}

TEST(SpanConds, SpanRankExamples) {
  auto s = seq_of(2, {IntegerPolynomial{1}, IntegerPolynomial{0, 1}, IntegerPolynomial{0, 0, 1}});
  EXPECT_EQ(span_rank(s, 2, 2), 3u);
  EXPECT_EQ(code_of([&] { span_rank(s, 3, 2); }), ErrorCode::IndexOutOfRange);
  std::mt19937_64 rng(4);
  for (int n : {2, 3, 4}) {
    auto q = seq_of(n, {random_poly(rng, n, 9), random_poly(rng, n, 9), random_poly(rng, n, 9)});
    int m = psi_lower_m(n);
    std::size_t fam = span_family(q, 2, m).size();
    EXPECT_EQ(fam, static_cast<std::size_t>(3 * (m - n + 1)));
    EXPECT_LE(span_rank(q, 2, m), std::min<std::size_t>(fam, m + 1));
  }
}

TEST(SpanConds, SpanRankPlantedDeficit) {
  // all three share the factor g of degree 2: rank drops by deg g at m = n
  IntegerPolynomial g{1, 0, 1};
  auto s = seq_of(4, {multiply(g, IntegerPolynomial{1, 1, 1}), multiply(g, IntegerPolynomial{2, -1, 3}),
                      multiply(g, IntegerPolynomial{-1, 4, 1})});
  for (int m = 4; m <= 7; ++m) {
    std::size_t r = span_rank(s, 2, m);
    EXPECT_EQ(r, std::min<std::size_t>(static_cast<std::size_t>(m + 1 - 2), 3 * (m - 4 + 1)));
  }
}

TEST(SpanConds, SpanRankMonotoneFullness) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    int n = 2 + t % 4;
    auto s = seq_of(n, {random_poly(rng, n, 5), random_poly(rng, n, 5), random_poly(rng, n, 5)});
    bool full = false;
    for (int m = n; m <= 2 * n - 1; ++m) {
      bool f = span_rank(s, 2, m) == static_cast<std::size_t>(m + 1);
      if (full) EXPECT_TRUE(f);
      full = full || f;
    }
  }
}

TEST(SpanConds, PsiEstimateSmall) {
  auto s = seq_of(2, {IntegerPolynomial{1}, IntegerPolynomial{0, 1}, IntegerPolynomial{0, 0, 1}});
  auto e = psi_estimate(s, 2, 2, 1);
  ASSERT_TRUE(e.psi_hat.has_value());
  EXPECT_EQ(*e.psi_hat, 2);
  EXPECT_EQ(e.phi_nonzero, 1u);
  auto none = psi_estimate(s, 2, 2, 3);
  EXPECT_FALSE(none.psi_hat.has_value());
  EXPECT_EQ(code_of([&] { psi_estimate(seq_of(2, {IntegerPolynomial{1}, IntegerPolynomial{0, 1}}), 0, 0); }),
            ErrorCode::EmptyWindow);
}

TEST(SpanConds, PsiOnComputedSequences) {
  for (const char* name : {"cbrt2", "cf_arith"}) {
    for (int n : {2, 3}) {
      auto seq = best_approx_sequence(n, preset_number(name), n == 2 ? 200 : 40);
      auto e = psi_estimate(seq, 0, 0, 1);
      ASSERT_TRUE(e.psi_hat.has_value()) << name << n;
      EXPECT_GE(*e.psi_hat, psi_lower_m(n));
      EXPECT_LE(*e.psi_hat, 2 * n - 1);
      for (std::size_t k = 2; k <= seq.size(); ++k) {
        auto cert = upbo_certificate(seq, k);
        if (cert) EXPECT_TRUE(*cert) << name << " k=" << k;
      }
    }
  }
}

TEST(SpanConds, BabiExamples) {
  auto s = seq_of(2, {IntegerPolynomial{1}, IntegerPolynomial{0, 1}, IntegerPolynomial{0, 0, 1}});
  BabiResult r = babi_check(s, 2, 2);
  EXPECT_EQ(r.rank_c, 3u);
  EXPECT_TRUE(r.bound_generic);
  auto c = seq_of(3, {IntegerPolynomial{-2, 0, 0, 1}, IntegerPolynomial{1, 1, 0, 1}, IntegerPolynomial{1}});
  BabiResult full = babi_check(c, 2, 5);
  EXPECT_TRUE(full.coprime);
  EXPECT_EQ(full.rank_c, 6u);
  // shared factor of degree n-1: the generic bound is attained
  IntegerPolynomial g{1, 1, 1};
  auto sh = seq_of(3, {multiply(g, IntegerPolynomial{1, 2}), multiply(g, IntegerPolynomial{-3, 1}), IntegerPolynomial{1}});
  for (int m = 3; m <= 5; ++m) {
    BabiResult b = babi_check(sh, 2, m);
    EXPECT_EQ(b.rank_c, static_cast<std::size_t>(m - 3 + 2)) << m;
    EXPECT_TRUE(b.bound_generic);
    EXPECT_FALSE(b.coprime);
  }
}

TEST(SpanConds, BabiOnComputedSequence) {
  auto seq = best_approx_sequence(3, preset_number("liouville2"), 40);
  for (std::size_t k = 3; k <= seq.size(); ++k)
    for (int m = 3; m <= 5; ++m) {
      BabiResult b = babi_check(seq, k, m);
      EXPECT_TRUE(b.bound_generic) << k << " " << m;
      if (b.coprime) EXPECT_TRUE(b.bound_coprime) << k << " " << m;
    }
}

TEST(SpanConds, ExtendBasis) {
  PolyFamily ind{{IntegerPolynomial{1}, IntegerPolynomial{0, 1}}, 2};
  PolyFamily pool{{IntegerPolynomial{1, 1}, IntegerPolynomial{0, 0, 1}}, 2};
  auto sel = extend_basis(ind, pool);
  ASSERT_EQ(sel.size(), 1u);
  EXPECT_EQ(sel[0], 1u);
  PolyFamily none{{}, 3};
  PolyFamily span{{IntegerPolynomial{1, 1}, IntegerPolynomial{2, 2}, IntegerPolynomial{0, 1, 1}, IntegerPolynomial{0, 0, 0, 1}}, 3};
  EXPECT_EQ(extend_basis(none, span).size(), 3u);
  PolyFamily dep{{IntegerPolynomial{1}, IntegerPolynomial{2}}, 1};
  EXPECT_EQ(code_of([&] { extend_basis(dep, pool); }), ErrorCode::DependentInput);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    PolyFamily a{{random_poly(rng, 4, 5)}, 4}, p{{}, 4};
    for (int i = 0; i < 3; ++i) p.members.push_back(random_poly(rng, 4, 5));
    p.members.push_back(p.members[0] + p.members[1]);
    PolyFamily all = p;
    all.members.push_back(a.members[0]);
    EXPECT_EQ(extend_basis(a, p).size(), rank_of_family(all) - 1);
  }
}
