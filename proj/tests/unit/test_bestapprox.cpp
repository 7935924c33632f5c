#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

#include "dioph/bestapprox.hpp"
#include "dioph/error.hpp"

using namespace dioph;

namespace {

// Plain enumeration with 400-bit MPFR values; canonical sign, lex tie-break.
std::vector<IntegerPolynomial> mpfr_records(const NumberDescriptor& z, int n, long h_max) {
  const mpfr_prec_t prec = 400;
  RationalInterval r = z.refine(450);
  mpq_class mid = (r.lo + r.hi) / 2;
  mpfr_t x, acc, best, tiny;
  mpfr_inits2(prec, x, acc, best, tiny, (mpfr_ptr)0);
  mpfr_set_q(x, mid.get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui_2exp(tiny, 1, -330, MPFR_RNDN);
  std::vector<IntegerPolynomial> out;
  bool have_inc = false;
  mpfr_t inc;
  mpfr_init2(inc, prec);
  for (long h = 1; h <= h_max; ++h) {
    std::vector<long> c(n + 1, -h);
    bool have = false;
    IntegerPolynomial arg;
    while (true) {
      long hh = 0;
      int top = -1;
      for (int i = 0; i <= n; ++i) {
        hh = std::max(hh, std::labs(c[i]));
        if (c[i]) top = i;
      }
      if (hh == h && top >= 0 && c[top] > 0) {
        mpfr_set_ui(acc, 0, MPFR_RNDN);
        for (int i = n; i >= 0; --i) {
          mpfr_mul(acc, acc, x, MPFR_RNDN);
          mpfr_add_si(acc, acc, c[i], MPFR_RNDN);
        }
        mpfr_abs(acc, acc, MPFR_RNDN);
        if (!(z.kind() != NumberKind::Liouville && mpfr_cmp(acc, tiny) < 0)) {
          std::vector<mpz_class> cz(c.begin(), c.end());
          IntegerPolynomial p(cz);
          bool take = !have;
          if (have) {
            mpfr_t d;
            mpfr_init2(d, prec);
            mpfr_sub(d, acc, best, MPFR_RNDN);
            mpfr_abs(d, d, MPFR_RNDN);
            if (mpfr_cmp(d, tiny) < 0)
              take = lex_less(p, arg);
            else
              take = mpfr_cmp(acc, best) < 0;
            mpfr_clear(d);
          }
          if (take) {
            mpfr_set(best, acc, MPFR_RNDN);
            arg = p;
            have = true;
          }
        }
      }
      int i = 0;
      while (i <= n && c[i] == h) c[i++] = -h;
      if (i > n) break;
      ++c[i];
    }
    if (have && (!have_inc || mpfr_cmp(best, inc) < 0)) {
      mpfr_t d;
      mpfr_init2(d, prec);
      bool strictly = true;
      if (have_inc) {
        mpfr_sub(d, inc, best, MPFR_RNDN);
        strictly = mpfr_cmp(d, tiny) > 0;
      }
      mpfr_clear(d);
      if (strictly) {
        out.push_back(arg);
        mpfr_set(inc, best, MPFR_RNDN);
        have_inc = true;
      }
    }
  }
  mpfr_clears(x, acc, best, tiny, inc, (mpfr_ptr)0);
  return out;
}

std::vector<IntegerPolynomial> polys_of(const BestApproxSequence& s) {
  std::vector<IntegerPolynomial> v;
  for (const auto& r : s.records) v.push_back(r.poly);
  return v;
}

BestApproxSequence synthetic(std::vector<std::pair<long, mpq_class>> hv) {
  BestApproxSequence s;
  s.n = 1;
  s.h_max = hv.back().first;
  for (std::size_t i = 0; i < hv.size(); ++i) {
    BestApproxRecord r;
    r.k = i + 1;
    r.poly = IntegerPolynomial{-1, hv[i].first};
    r.height = hv[i].first;
    r.value = RationalInterval::point(hv[i].second);
    r.degree = 1;
    s.records.push_back(r);
  }
  return s;
}

}  // namespace

TEST(BestApprox, ConvergentsOfSqrt2Minus1) {
  auto seq = best_approx_sequence(1, preset_number("sqrt2m1"), 30);
  // classical convergents p/q of [0; 2, 2, 2, ...]
  std::vector<IntegerPolynomial> want;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 2;
  want.push_back(IntegerPolynomial{-p0, q0});
  while (q1 <= 30) {
    want.push_back(IntegerPolynomial{-p1, q1});
    long p2 = 2 * p1 + p0, q2 = 2 * q1 + q0;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
  }
  EXPECT_EQ(polys_of(seq), want);
  EXPECT_EQ(want.size(), 5u);
}

TEST(BestApprox, HeightOneRecord) {
  // at height one the candidates are 1, T, T - 1, T + 1
  for (const char* name : {"sqrt2m1", "liouville2", "cf_fibonacci", "cf_arith"}) {
    Number z = preset_number(name);
    auto seq = best_approx_sequence(1, z, 1);
    ASSERT_EQ(seq.size(), 1u) << name;
    bool small = z->refine(40).hi < mpq_class(1, 2);
    EXPECT_EQ(seq.at(1).poly, (small ? IntegerPolynomial{0, 1} : IntegerPolynomial{-1, 1})) << name;
  }
  auto third = NumberDescriptor::decimal("0." + std::string(60, '3'), 60);
  auto s = oracle_best_approx(1, third, 1);
  EXPECT_EQ(s.at(1).poly, (IntegerPolynomial{0, 1}));
}

TEST(BestApprox, LiouvilleRecord) {
  auto seq = best_approx_sequence(1, preset_number("liouville2"), 100);
  bool found = false;
  for (const auto& r : seq.records) {
    if (r.poly == IntegerPolynomial{-49, 64}) {
      found = true;
      EXPECT_GT(r.value.lo, pow2_neg(19));
      EXPECT_LT(r.value.hi, pow2_neg(17));
    }
  }
  EXPECT_TRUE(found);
}

TEST(BestApprox, ExactZeroExcluded) {
  auto seq = oracle_best_approx(2, preset_number("sqrt2"), 2);
  for (const auto& r : seq.records) EXPECT_NE(r.poly, (IntegerPolynomial{-2, 0, 1}));
  EXPECT_TRUE(monotone_records(seq));
}

TEST(BestApprox, AgreesWithMpfrEnumeration) {
  struct Case {
    const char* name;
    int n;
    long h;
  };
  for (Case c : {Case{"cbrt2", 2, 12}, Case{"liouville2", 2, 10}, Case{"cf_arith", 3, 6},
                 Case{"sqrt2m1", 2, 9}, Case{"cf_fibonacci", 1, 60}}) {
    Number z = preset_number(c.name);
    auto seq = best_approx_sequence(c.n, z, c.h);
    EXPECT_EQ(polys_of(seq), mpfr_records(*z, c.n, c.h)) << c.name << " n=" << c.n;
  }
}

TEST(BestApprox, PrunedMatchesOracle) {
  for (const auto& name : stock_number_names())
    for (int n = 1; n <= 3; ++n) {
      long h = n == 3 ? 12 : 25;
      Number z = preset_number(name);
      std::string diff;
      EXPECT_TRUE(same_records(best_approx_sequence(n, z, h), oracle_best_approx(n, z, h), &diff))
          << name << " n=" << n << " " << diff;
    }
}

TEST(BestApprox, LinearFastPathAgrees) {
  for (const auto& name : stock_number_names()) {
    Number z = preset_number(name);
    std::string diff;
    EXPECT_TRUE(same_records(best_approx_linear(z, 300), best_approx_sequence(1, z, 300), &diff))
        << name << " " << diff;
  }
}

TEST(BestApprox, InvariantsAndPrefixStability) {
  Number z = preset_number("cbrt2");
  auto small = best_approx_sequence(2, z, 60), big = best_approx_sequence(2, z, 120);
  EXPECT_TRUE(monotone_records(big));
  ASSERT_LE(small.size(), big.size());
  for (std::size_t k = 1; k <= small.size(); ++k) EXPECT_EQ(small.at(k).poly, big.at(k).poly);
  for (const auto& r : big.records) {
    EXPECT_EQ(r.height, r.poly.height());
    EXPECT_GT(r.value.lo, 0);
    EXPECT_TRUE(r.poly.is_canonical());
    EXPECT_EQ(r.degree, r.poly.degree());
  }
}

TEST(BestApprox, ThreadCountDoesNotChangeResult) {
  Number z = preset_number("cf_fibonacci");
  BestApproxOptions o;
  o.jobs = 4;
  std::string diff;
  EXPECT_TRUE(same_records(best_approx_sequence(3, z, 30), best_approx_sequence(3, z, 30, o), &diff)) << diff;
}

TEST(BestApprox, BudgetAndArguments) {
  Number z = preset_number("cbrt2");
  EXPECT_THROW(oracle_best_approx(3, z, 10, {}, 1000), Error);
  EXPECT_THROW(best_approx_sequence(0, z, 10), Error);
  EXPECT_THROW(best_approx_sequence(1, z, 0), Error);
}

TEST(BestApprox, UniformRatioConstructed) {
  auto s = synthetic({{1, mpq_class(1, 8)}, {2, mpq_class(1, 16)}});
  auto rows = uniform_ratio_report(s);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].ratio.mid(), 3.0, 1e-12);
  EXPECT_LE(rows[0].ratio.lo, 3.0);
  EXPECT_GE(rows[0].ratio.hi, 3.0);
}

TEST(BestApprox, UniformRatioPrefixOnly) {
  Number z = preset_number("liouville2");
  auto a = uniform_ratio_report(best_approx_sequence(1, z, 100));
  auto b = uniform_ratio_report(best_approx_sequence(1, z, 400));
  ASSERT_LE(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].ratio.lo, b[i].ratio.lo);
    EXPECT_EQ(a[i].running_min.hi, b[i].running_min.hi);
  }
}

TEST(BestApprox, EhklarGrowth) {
  auto s = synthetic({{10, mpq_class(1, 100)}, {1000, mpq_class(1, 100000)}});
  auto rows = ehklar_report(s);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].rho.mid(), 3.0, 1e-12);
}

TEST(BestApprox, CbrtGrowthBounded) {
  auto rows = ehklar_report(best_approx_sequence(2, preset_number("cbrt2"), 400));
  for (const auto& r : rows) EXPECT_LT(r.rho.hi, 4.0) << r.k;
}

TEST(BestApprox, RecordExponent) {
  auto seq = best_approx_sequence(1, preset_number("liouville2"), 100);
  for (const auto& r : seq.records)
    if (r.poly == IntegerPolynomial{-49, 64}) EXPECT_EQ(render12(record_exponent(r).lo), "3");
}
