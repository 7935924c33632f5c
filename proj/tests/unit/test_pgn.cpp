#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

#include "dioph/error.hpp"
#include "dioph/matrix.hpp"
#include "dioph/pgn.hpp"

using namespace dioph;

namespace {

Number half() { return NumberDescriptor::continued_fraction({0, 2}, CfRule{}); }

std::vector<IntegerPolynomial> box(int m, long h) {
  std::vector<IntegerPolynomial> out;
  std::vector<long> c(m + 1, -h);
  while (true) {
    int top = -1;
    for (int i = 0; i <= m; ++i)
      if (c[i]) top = i;
    if (top >= 0 && c[top] > 0) out.emplace_back(std::vector<mpz_class>(c.begin(), c.end()));
    int i = 0;
    while (i <= m && c[i] == h) c[i++] = -h;
    if (i > m) break;
    ++c[i];
  }
  return out;
}

// log|P(zeta)| through MPFR at 300 bits; -inf for exact zeros
double mpfr_log_abs(const IntegerPolynomial& p, const NumberDescriptor& z) {
  if (z.certifies_zero() && is_zero_at(p, z)) return -INFINITY;
  RationalInterval r = z.refine(320);
  mpfr_t x, acc;
  mpfr_inits2(300, x, acc, (mpfr_ptr)0);
  mpfr_set_q(x, mpq_class((r.lo + r.hi) / 2).get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui(acc, 0, MPFR_RNDN);
  for (int i = p.degree(); i >= 0; --i) {
    mpfr_mul(acc, acc, x, MPFR_RNDN);
    mpfr_add_z(acc, acc, p.coeffs()[i].get_mpz_t(), MPFR_RNDN);
  }
  mpfr_abs(acc, acc, MPFR_RNDN);
  mpfr_log(acc, acc, MPFR_RNDN);
  double v = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clears(x, acc, (mpfr_ptr)0);
  return v;
}

// lambda_j = min over independent j-subsets of the largest member value
std::vector<double> exhaustive_minima(const std::vector<IntegerPolynomial>& pool, int m, double q,
                                      const NumberDescriptor& z) {
  std::vector<double> val;
  for (const auto& p : pool)
    val.push_back(std::max(std::log(p.height().get_d()) - q / m, mpfr_log_abs(p, z) + q));
  const std::size_t dim = m + 1, n = pool.size();
  std::vector<double> best(dim, INFINITY);
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, double)> rec = [&](std::size_t from, double cur) {
    std::size_t j = idx.size();
    if (j > 0) {
      IntMatrix mat(j, dim);
      for (std::size_t r = 0; r < j; ++r)
        for (std::size_t c = 0; c < dim; ++c) mat(r, c) = pool[idx[r]].coeff(c);
      if (bareiss_rank(mat) < j) return;
      best[j - 1] = std::min(best[j - 1], cur);
    }
    if (j == dim) return;
    for (std::size_t i = from; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1, std::max(cur, val[i]));
      idx.pop_back();
    }
  };
  rec(0, -INFINITY);
  return best;
}

}  // namespace

TEST(Pgn, LstarExamples) {
  Number z = half();
  RealInterval v = lstar(IntegerPolynomial{0, 1}, mpq_class(0), 1, *z);
  EXPECT_LE(v.lo, 0.0);
  EXPECT_GE(v.hi, 0.0);
  EXPECT_NEAR(v.mid(), 0.0, 1e-15);
  for (int m : {1, 2, 3}) {
    double qb = m / (m + 1.0) * std::log(2.0);
    mpq_class q(qb);
    RealInterval at = lstar(IntegerPolynomial{0, 1}, q, m, *z);
    EXPECT_NEAR(at.mid(), -qb / m, 1e-12);
    EXPECT_NEAR(at.mid(), std::log(0.5) + qb, 1e-12);
  }
}

TEST(Pgn, LstarSlopes) {
  Number z = preset_number("cbrt2");
  const int m = 2;
  for (const auto& p : {IntegerPolynomial{-5, 4}, IntegerPolynomial{1, -2, 1}, IntegerPolynomial{-29, 6, 9}}) {
    for (int i = 0; i < 40; ++i) {
      mpq_class q0(i, 4), q1(i + 1, 4);
      double dv = lstar(p, q1, m, *z).mid() - lstar(p, q0, m, *z).mid();
      double slope = dv / 0.25;
      EXPECT_GE(slope, -1.0 / m - 1e-9);
      EXPECT_LE(slope, 1.0 + 1e-9);
    }
  }
}

TEST(Pgn, HandPoolAtHalf) {
  PolynomialPool pool(1, half(), 1);
  EXPECT_EQ(pool.size(), 4u);
  SSGraphSample s = successive_minima_at(mpq_class(0), pool);
  ASSERT_EQ(s.values.size(), 2u);
  EXPECT_NEAR(s.values[0].mid(), 0.0, 1e-15);
  EXPECT_NEAR(s.values[1].mid(), 0.0, 1e-15);
  for (const auto& w : s.witnesses) EXPECT_NE(w, (IntegerPolynomial{1, 1}));
}

TEST(Pgn, GreedyEqualsExhaustive) {
  struct Case {
    const char* name;
    int m;
    long h;
  };
  for (Case c : {Case{"cbrt2", 1, 4}, Case{"sqrt2m1", 2, 2}, Case{"liouville2", 2, 2}, Case{"cf_arith", 1, 6},
                 Case{"cf_fibonacci", 3, 1}}) {
    Number z = preset_number(c.name);
    auto polys = box(c.m, c.h);
    ASSERT_LE(polys.size(), 200u);
    PolynomialPool pool(c.m, z, c.h);
    EXPECT_EQ(pool.size(), polys.size());
    for (int i = 0; i <= 6; ++i) {
      mpq_class q(i, 2);
      SSGraphSample s = successive_minima_at(q, pool);
      auto want = exhaustive_minima(polys, c.m, q.get_d(), *z);
      ASSERT_EQ(s.values.size(), want.size());
      for (std::size_t j = 0; j < want.size(); ++j)
        EXPECT_NEAR(s.values[j].mid(), want[j], 1e-9) << c.name << " q=" << q << " j=" << j;
    }
  }
}

TEST(Pgn, ExplicitPoolMatchesEnumeratedPool) {
  Number z = preset_number("cbrt2");
  PolynomialPool a(2, z, 3), b(2, z, 3, box(2, 3));
  for (int i = 0; i < 5; ++i) {
    auto sa = successive_minima_at(mpq_class(i), a), sb = successive_minima_at(mpq_class(i), b);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(sa.values[j].mid(), sb.values[j].mid(), 1e-12);
  }
}

TEST(Pgn, CertifiedSamplesObeyMinkowski) {
  for (const auto& name : stock_number_names()) {
    for (int m : {1, 2}) {
      Number z = preset_number(name);
      SSGraph g = ss_graph(m, z, mpq_class(0), mpq_class(m == 1 ? 6 : 4), 24, m == 1 ? 120 : 25, 2);
      MinkowskiReport r = minkowski_check(g);
      EXPECT_TRUE(r.holds) << name << " m=" << m;
      EXPECT_LE(r.sup_abs_sum, r.constant);
      for (const auto& s : g.samples) {
        ASSERT_EQ(s.values.size(), static_cast<std::size_t>(m + 1));
        for (std::size_t j = 1; j < s.values.size(); ++j) EXPECT_LE(s.values[j - 1].lo, s.values[j].lo);
        if (s.certified) EXPECT_LT(s.values.back().hi, std::log(g.h_pool + 1.0) - s.q.get_d() / m);
      }
      for (const auto& res : r.residuals) EXPECT_LE(std::fabs(res.sum.mid()), r.constant);
      EXPECT_GE(r.min_nurmi_slack, 0.0);
    }
  }
}

TEST(Pgn, MinkowskiConstantForCubeRoot) {
  double c = minkowski_constant(2, *preset_number("cbrt2"));
  EXPECT_LE(c, 3 * std::log(6.0));
  // log 2 + 2 log(2^(1/3) + 2^(2/3))
  double s = std::cbrt(2.0) + std::cbrt(4.0);
  EXPECT_NEAR(c, std::log(2.0) + 2 * std::log(s), 1e-9);
  EXPECT_NEAR(minkowski_constant(1, *preset_number("sqrt2m1")), std::log(2.0), 1e-9);
}

TEST(Pgn, NoCertifiedSamples) {
  SSGraph g;
  g.m = 1;
  g.zeta = preset_number("cbrt2");
  EXPECT_THROW(minkowski_check(g), Error);
  try {
    minkowski_check(g);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCertifiedSamples);
  }
}

TEST(Pgn, RefinedGridKeepsSharedSamples) {
  Number z = preset_number("cf_fibonacci");
  PolynomialPool pool(1, z, 60);
  SSGraph a = ss_graph(pool, mpq_class(0), mpq_class(4), 8, 1), b = ss_graph(pool, mpq_class(0), mpq_class(4), 16, 3);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& x = a.samples[i];
    const auto& y = b.samples[2 * i];
    EXPECT_EQ(x.q, y.q);
    for (std::size_t j = 0; j < x.values.size(); ++j) EXPECT_EQ(x.values[j].lo, y.values[j].lo);
    EXPECT_EQ(x.certified, y.certified);
  }
}

TEST(Pgn, FirstMinimumFollowsConvergents) {
  Number z = preset_number("sqrt2m1");
  auto seq = best_approx_sequence(1, z, 200);
  PolynomialPool pool(1, z, 200);
  auto cp = crossing_points(seq, 1);
  for (std::size_t i = 0; i + 1 < cp.size(); ++i) {
    // midway between crossings the first minimum is attained by the record active there
    double qm = 0.5 * (cp[i].q.mid() + cp[i + 1].q.mid());
    SSGraphSample s = successive_minima_at(mpq_class(qm), pool);
    if (!s.certified) continue;
    EXPECT_EQ(s.witnesses[0], seq.at(cp[i].k).poly) << "k=" << cp[i].k;
  }
}

TEST(Pgn, CrossingPoints) {
  for (const auto& name : stock_number_names()) {
    Number z = preset_number(name);
    for (int m : {1, 2, 3}) {
      auto seq = best_approx_sequence(m, z, m == 1 ? 500 : 60);
      auto cp = crossing_points(seq, m);
      for (std::size_t i = 1; i < cp.size(); ++i) EXPECT_LT(cp[i - 1].q.hi, cp[i].q.lo) << name << m;
      for (const auto& c : cp) {
        const auto& a = seq.at(c.k - 1);
        const auto& b = seq.at(c.k);
        RealInterval qi = c.q;
        RealInterval la = lstar_from_logs(log_interval(a.height), log_interval(a.value), qi, m);
        RealInterval lb = lstar_from_logs(log_interval(b.height), log_interval(b.value), qi, m);
        EXPECT_NEAR(la.mid(), lb.mid(), 1e-9);
      }
    }
  }
}

TEST(Pgn, ApplyPointFormula) {
  ApplyPoint a = apply_point_formula(RealInterval::exact(1.0), RealInterval::exact(-1.0), 1);
  EXPECT_NEAR(a.q_tilde.mid(), 1.0, 1e-15);
  EXPECT_NEAR(a.rhs.mid(), 0.0, 1e-15);
  EXPECT_LE(a.lhs.lo, 1e-15);
  EXPECT_TRUE(a.holds);
}

TEST(Pgn, LemmaApplyPoint) {
  Number z = preset_number("cbrt2");
  auto seq = best_approx_sequence(2, z, 300);
  for (std::size_t k = 2; k <= seq.size(); ++k) {
    PolyFamily single{{seq.at(k).poly}, 2};
    ApplyPoint one = lemma_apply_point(single, 2, *z);
    EXPECT_TRUE(one.holds);
    EXPECT_NEAR(one.lhs.mid(), one.q_tilde.mid() * (2 - one.w.mid()) / (2 * (1 + one.w.mid())), 1e-9);
    if (poly_gcd(seq.at(k - 1).poly, seq.at(k).poly).degree() == 0 ||
        rank_of_family(PolyFamily{{seq.at(k - 1).poly, seq.at(k).poly}, 2}) == 2) {
      PolyFamily pair{{seq.at(k - 1).poly, seq.at(k).poly}, 2};
      EXPECT_TRUE(lemma_apply_point(pair, 2, *z).holds) << k;
    }
  }
  PolyFamily dep{{IntegerPolynomial{1, 1}, IntegerPolynomial{2, 2}}, 2};
  EXPECT_THROW(lemma_apply_point(dep, 2, *z), Error);
}

TEST(Pgn, ElaineWiring) {
  SSGraph g;
  g.m = 2;
  g.zeta = preset_number("cbrt2");
  for (int i = 1; i <= 4; ++i) {
    SSGraphSample s;
    s.q = i;
    s.values = {RealInterval::exact(0), RealInterval::exact(0), RealInterval::exact(0)};
    s.certified = true;
    g.samples.push_back(s);
  }
  ElaineResiduals r = elaine_residuals(g, RealInterval::exact(2), RealInterval::exact(2));
  EXPECT_NEAR(r.lower.mid(), 3.0 / 2 - 3.0 / 2, 1e-12);
  ElaineResiduals r5 = elaine_residuals(g, RealInterval::exact(5), RealInterval::exact(3));
  EXPECT_NEAR(r5.lower.mid(), 6.0 / 2 - 3.0 / 2, 1e-12);
  EXPECT_NEAR(r5.upper.mid(), 4.0 / 2 - 3.0 / 2, 1e-12);
  EXPECT_EQ(r.samples, 4u);
}

TEST(Pgn, ElaineOnAlgebraicGraph) {
  Number z = preset_number("cbrt2");
  SSGraph g = ss_graph(2, z, mpq_class(1), mpq_class(4), 24, 30, 2);
  ElaineResiduals r = elaine_residuals(g, RealInterval::exact(2), RealInterval::exact(2));
  EXPECT_GT(r.samples, 0u);
  EXPECT_LT(std::fabs(r.lower.mid()), 1.5);
  EXPECT_LT(std::fabs(r.upper.mid()), 1.5);
}

TEST(Pgn, Arguments) {
  Number z = preset_number("cbrt2");
  EXPECT_THROW(ss_graph(1, z, mpq_class(2), mpq_class(1), 4, 10), Error);
  EXPECT_THROW(PolynomialPool(3, z, 1000), Error);
  EXPECT_THROW(lstar(IntegerPolynomial{}, mpq_class(0), 1, *z), Error);
}
