#include "dioph/pgn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <thread>

#include "dioph/error.hpp"
#include "dioph/matrix.hpp"
#include "fixed_eval.hpp"

namespace dioph {

using detail::FixedInterval;
using detail::FixedPowers;
using detail::i128;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealInterval q_interval(const mpq_class& q) { return RealInterval::of(q); }

RealInterval log_abs_value(const IntegerPolynomial& p, const NumberDescriptor& zeta,
                           unsigned long cap) {
  RationalInterval v = abs_value_interval(p, zeta, 64, cap);
  if (v.hi == 0) return {-kInf, -kInf};
  return log_interval(v);
}

}  // namespace

RealInterval lstar_from_logs(const RealInterval& log_h, const RealInterval& log_v,
                             const RealInterval& q, int m) {
  RealInterval a = log_h - q / RealInterval::exact(m);
  RealInterval b = log_v.hi == -kInf ? RealInterval{-kInf, -kInf} : log_v + q;
  return max(a, b);
}

RealInterval lstar(const IntegerPolynomial& p, const mpq_class& q, int m,
                   const NumberDescriptor& zeta) {
  if (p.is_zero()) fail(ErrorCode::InvalidArgument, "L* of the zero polynomial");
  if (q < 0) fail(ErrorCode::InvalidArgument, "q must be >= 0");
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  return lstar_from_logs(log_interval(p.height()), log_abs_value(p, zeta, kDefaultPrecisionCap),
                         q_interval(q), m);
}

// ---------------------------------------------------------------- pool

PolynomialPool::PolynomialPool(int m, Number zeta, std::int64_t h_pool, std::size_t keep,
                               unsigned long cap)
    : m_(m), zeta_(std::move(zeta)), h_pool_(h_pool) {
  if (m < 1 || m > 7) fail(ErrorCode::InvalidArgument, "pool degree must be in 1..7");
  if (h_pool < 1) fail(ErrorCode::InvalidArgument, "pool height must be >= 1");
  if (keep < 1) fail(ErrorCode::InvalidArgument, "pool group size must be >= 1");
  double box = std::pow(2.0 * static_cast<double>(h_pool) + 1.0, m + 1) / 2.0;
  if (box > 6e7) fail(ErrorCode::BudgetExceeded, "pool of " + std::to_string(box) + " polynomials is too large");

  FixedPowers fx = FixedPowers::build(*zeta_, m, h_pool);
  using Coeffs = std::array<std::int64_t, 8>;
  struct Item {
    i128 key;  // |value| upper end
    FixedInterval v;
    Coeffs c;
    bool operator<(const Item& o) const { return key < o.key; }
  };
  std::vector<std::priority_queue<Item>> heaps(static_cast<std::size_t>(h_pool) + 1);
  std::vector<i128> dropped(static_cast<std::size_t>(h_pool) + 1, detail::kI128Max);
  std::vector<bool> trunc(static_cast<std::size_t>(h_pool) + 1, false);

  Coeffs c{};
  auto visit = [&](auto&& self, int i, FixedInterval s, std::int64_t h, bool lead) -> void {
    if (i < 0) {
      if (!lead) return;
      ++enumerated_;
      Item it{s.abs_hi(), s, c};
      auto& heap = heaps[h];
      if (heap.size() < keep) {
        heap.push(it);
      } else if (it.key < heap.top().key) {
        dropped[h] = std::min(dropped[h], heap.top().v.abs_lo());
        heap.pop();
        heap.push(it);
        trunc[h] = true;
      } else {
        dropped[h] = std::min(dropped[h], s.abs_lo());
        trunc[h] = true;
      }
      return;
    }
    std::int64_t from = lead ? -h_pool : 0;
    for (std::int64_t v = from; v <= h_pool; ++v) {
      c[i] = v;
      FixedInterval t = fx.term(v, i);
      self(self, i - 1, {s.lo + t.lo, s.hi + t.hi}, std::max(h, v < 0 ? -v : v), lead || v != 0);
    }
    c[i] = 0;
  };
  visit(visit, m, FixedInterval{}, 0, false);

  for (std::int64_t h = 1; h <= h_pool; ++h) {
    auto& heap = heaps[h];
    if (heap.empty()) continue;
    Group g;
    g.height = h;
    g.log_h = log_interval(mpz_class(static_cast<long>(h)));
    g.truncated = trunc[h];
    if (g.truncated) {
      if (dropped[h] <= 0)
        g.dropped_floor = {-kInf, -kInf};
      else
        g.dropped_floor = log_interval(fx.to_rational({dropped[h], dropped[h]}));
    }
    while (!heap.empty()) {
      const Item& it = heap.top();
      Entry e;
      e.poly = IntegerPolynomial::from_int64(std::span<const std::int64_t>(it.c.data(), m + 1));
      e.log_h = g.log_h;
      if (it.v.contains_zero()) {
        if (zeta_->certifies_zero())
          e.log_v = log_abs_value(e.poly, *zeta_, cap);
        else
          e.log_v = {-kInf, log_interval(fx.to_rational({it.v.abs_hi(), it.v.abs_hi()})).hi};
      } else {
        e.log_v = log_interval(fx.to_rational({it.v.abs_lo(), it.v.abs_hi()}));
      }
      g.entries.push_back(std::move(e));
      heap.pop();
    }
    std::sort(g.entries.begin(), g.entries.end(), [](const Entry& a, const Entry& b) {
      if (a.log_v.lo != b.log_v.lo) return a.log_v.lo < b.log_v.lo;
      return lex_less(a.poly, b.poly);
    });
    truncated_ = truncated_ || g.truncated;
    groups_.push_back(std::move(g));
  }
}

PolynomialPool::PolynomialPool(int m, Number zeta, std::int64_t h_pool,
                               std::vector<IntegerPolynomial> polys, unsigned long cap)
    : m_(m), zeta_(std::move(zeta)), h_pool_(h_pool) {
  std::map<std::int64_t, Group> by_height;
  for (auto& p : polys) {
    if (p.is_zero()) continue;
    if (p.degree() > m) fail(ErrorCode::InvalidArgument, "pool member exceeds degree m");
    mpz_class hz = p.height();
    if (hz > h_pool) fail(ErrorCode::InvalidArgument, "pool member exceeds the pool height");
    std::int64_t h = hz.get_si();
    Group& g = by_height[h];
    g.height = h;
    g.log_h = log_interval(hz);
    Entry e;
    e.poly = p.canonical();
    e.log_h = g.log_h;
    e.log_v = log_abs_value(e.poly, *zeta_, cap);
    g.entries.push_back(std::move(e));
    ++enumerated_;
  }
  for (auto& [h, g] : by_height) {
    std::sort(g.entries.begin(), g.entries.end(), [](const Entry& a, const Entry& b) {
      if (a.log_v.lo != b.log_v.lo) return a.log_v.lo < b.log_v.lo;
      return lex_less(a.poly, b.poly);
    });
    groups_.push_back(std::move(g));
  }
}

std::size_t PolynomialPool::size() const {
  std::size_t s = 0;
  for (const auto& g : groups_) s += g.entries.size();
  return s;
}

RealInterval PolynomialPool::certification_line(const RealInterval& q) const {
  RealInterval qm = q / RealInterval::exact(m_);
  RealInterval line = log_interval(mpz_class(static_cast<long>(h_pool_ + 1))) - qm;
  for (const auto& g : groups_) {
    if (!g.truncated) continue;
    RealInterval floor_l = lstar_from_logs(g.log_h, g.dropped_floor, q, m_);
    line = min(line, floor_l);
  }
  return line;
}

// ---------------------------------------------------------------- graph

SSGraphSample successive_minima_at(const mpq_class& q, const PolynomialPool& pool) {
  if (q < 0) fail(ErrorCode::InvalidArgument, "q must be >= 0");
  const int m = pool.m();
  const std::size_t dim = static_cast<std::size_t>(m) + 1;
  RealInterval qi = q_interval(q);
  const auto& groups = pool.groups();

  struct Head {
    RealInterval value;
    std::size_t group;
    std::size_t index;
  };
  auto later = [&](const Head& a, const Head& b) {
    if (a.value.lo != b.value.lo) return a.value.lo > b.value.lo;
    if (a.group != b.group) return a.group > b.group;
    return a.index > b.index;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);
  auto value_of = [&](std::size_t g, std::size_t i) {
    const auto& e = groups[g].entries[i];
    return lstar_from_logs(e.log_h, e.log_v, qi, m);
  };
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (!groups[g].entries.empty()) heap.push({value_of(g, 0), g, 0});

  SSGraphSample s;
  s.q = q;
  EchelonBasis basis(dim);
  while (!heap.empty() && s.values.size() < dim) {
    Head h = heap.top();
    heap.pop();
    const auto& e = groups[h.group].entries[h.index];
    if (basis.add(e.poly.padded(dim))) {
      s.values.push_back(h.value);
      s.witnesses.push_back(e.poly);
    }
    if (h.index + 1 < groups[h.group].entries.size())
      heap.push({value_of(h.group, h.index + 1), h.group, h.index + 1});
  }
  // values are kept non-decreasing even where the interval keys overlap
  for (std::size_t j = 1; j < s.values.size(); ++j) {
    s.values[j].lo = std::max(s.values[j].lo, s.values[j - 1].lo);
    s.values[j].hi = std::max(s.values[j].hi, s.values[j - 1].hi);
  }
  s.certified = s.values.size() == dim && s.values.back().hi < pool.certification_line(qi).lo;
  return s;
}

SSGraph ss_graph(const PolynomialPool& pool, const mpq_class& q_min, const mpq_class& q_max,
                 unsigned steps, unsigned jobs) {
  if (!(q_min < q_max)) fail(ErrorCode::InvalidArgument, "q_min must be below q_max");
  if (q_min < 0) fail(ErrorCode::InvalidArgument, "q must be >= 0");
  if (steps < 1) fail(ErrorCode::InvalidArgument, "steps must be >= 1");
  SSGraph g;
  g.m = pool.m();
  g.zeta = pool.zeta();
  g.h_pool = pool.h_pool();
  g.pool_truncated = pool.truncated();
  g.samples.resize(steps + 1);
  mpq_class dq = (q_max - q_min) / steps;
  auto work = [&](unsigned w, unsigned stride) {
    for (unsigned i = w; i <= steps; i += stride) g.samples[i] = successive_minima_at(q_min + dq * i, pool);
  };
  if (jobs <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned w = 0; w < jobs; ++w)
      threads.emplace_back([&, w] {
        try {
          work(w, jobs);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return g;
}

SSGraph ss_graph(int m, Number zeta, const mpq_class& q_min, const mpq_class& q_max,
                 unsigned steps, std::int64_t h_pool, unsigned jobs) {
  PolynomialPool pool(m, std::move(zeta), h_pool);
  return ss_graph(pool, q_min, q_max, steps, jobs);
}

double minkowski_constant(int m, const NumberDescriptor& zeta) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  RationalInterval z = zeta.kind() == NumberKind::Decimal ? zeta.refine(1) : zeta.refine(32);
  mpq_class a = std::max(abs(z.lo), abs(z.hi)), p = 1, s = 0;
  for (int i = 1; i <= m; ++i) {
    p *= a;
    s += p;
  }
  double log_fact = std::lgamma(m + 2.0);
  double log_s = s > 1 ? log_interval(RationalInterval::point(s)).hi : 0.0;
  double c = std::max(log_fact, std::log(2.0) + m * log_s);
  return c * (1.0 + 1e-12) + 1e-12;
}

MinkowskiReport minkowski_check(const SSGraph& graph) {
  MinkowskiReport r;
  r.constant = minkowski_constant(graph.m, *graph.zeta);
  const int m = graph.m;
  r.min_nurmi_slack = kInf;
  for (const auto& s : graph.samples) {
    if (!s.certified) continue;
    ++r.certified;
    SampleResidual res;
    res.q = s.q;
    RealInterval sum = RealInterval::exact(0);
    for (const auto& v : s.values) sum = sum + v;
    res.sum = sum;
    res.sum_ok = sum.hi <= r.constant && sum.lo >= -r.constant;
    r.sup_abs_sum = std::max(r.sup_abs_sum, std::max(std::fabs(sum.lo), std::fabs(sum.hi)));
    const RealInterval& top = s.values[m];
    for (int j = 1; j <= m; ++j) {
      RealInterval f = RealInterval::exact(static_cast<double>(j)) /
                       RealInterval::exact(static_cast<double>(m + 1 - j));
      RealInterval g = top + f * s.values[j - 1];
      res.gimme.push_back(g);
      if (g.hi < -r.constant / (m + 1 - j)) res.gimme_ok = false;
      if (j == m) r.min_nurmi_slack = std::min(r.min_nurmi_slack, g.lo + r.constant);
    }
    r.holds = r.holds && res.sum_ok && res.gimme_ok;
    r.residuals.push_back(std::move(res));
  }
  if (r.certified == 0) fail(ErrorCode::NoCertifiedSamples, "no certified samples in the graph");
  return r;
}

std::vector<CrossingPoint> crossing_points(const BestApproxSequence& seq, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  std::vector<CrossingPoint> out;
  RealInterval f = RealInterval::exact(m) / RealInterval::exact(m + 1);
  for (std::size_t k = 2; k <= seq.size(); ++k) {
    RealInterval lh = log_interval(seq.at(k).height);
    RealInterval lv = log_interval(seq.at(k - 1).value);
    out.push_back({k, f * (lh - lv)});
  }
  return out;
}

ApplyPoint apply_point_formula(const RealInterval& log_h, const RealInterval& log_p1, int m) {
  if (log_h.lo <= 0) fail(ErrorCode::DomainError, "the transfer point needs H > 1");
  ApplyPoint a;
  RealInterval mm = RealInterval::exact(m);
  a.w = (-log_p1) / log_h;
  a.q_tilde = (mm / RealInterval::exact(m + 1)) * (log_h - log_p1);
  a.rhs = a.q_tilde * (mm - a.w) / (mm * (RealInterval::exact(1) + a.w));
  a.lhs = lstar_from_logs(log_h, log_p1, a.q_tilde, m);
  a.holds = a.lhs.lo <= a.rhs.hi;
  return a;
}

ApplyPoint lemma_apply_point(const PolyFamily& polys, int m, const NumberDescriptor& zeta) {
  if (polys.members.empty() || polys.size() > static_cast<std::size_t>(m) + 1)
    fail(ErrorCode::InvalidArgument, "need 1..m+1 polynomials");
  const std::size_t dim = static_cast<std::size_t>(m) + 1;
  EchelonBasis basis(dim);
  for (const auto& p : polys.members) {
    if (p.is_zero() || p.degree() > m) fail(ErrorCode::InvalidArgument, "polynomial degree exceeds m");
    if (!basis.add(p.padded(dim))) fail(ErrorCode::DependentInput, "polynomials are linearly dependent");
  }
  mpz_class h = 0;
  std::vector<RealInterval> lv;
  std::size_t top = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    h = std::max(h, polys.members[i].height());
    lv.push_back(log_abs_value(polys.members[i], zeta, kDefaultPrecisionCap));
    if (lv[i].hi > lv[top].hi) top = i;
  }
  RealInterval log_h = log_interval(h);
  ApplyPoint a = apply_point_formula(log_h, lv[top], m);
  RealInterval lhs{-kInf, -kInf};
  for (std::size_t i = 0; i < polys.size(); ++i) {
    RealInterval li = lstar_from_logs(log_interval(polys.members[i].height()), lv[i], a.q_tilde, m);
    lhs = max(lhs, li);
  }
  a.lhs = lhs;
  a.holds = a.lhs.lo <= a.rhs.hi;
  return a;
}

ElaineResiduals elaine_residuals(const SSGraph& graph, const RealInterval& w,
                                 const RealInterval& what) {
  ElaineResiduals r;
  bool have = false;
  for (const auto& s : graph.samples) {
    if (!s.certified || s.q <= 0) continue;
    RealInterval psi = s.values[0] / q_interval(s.q);
    if (!have) {
      r.psi_low = r.psi_high = psi;
      r.q_lo = r.q_hi = s.q;
      have = true;
    } else {
      r.psi_low = min(r.psi_low, psi);
      r.psi_high = max(r.psi_high, psi);
      r.q_lo = std::min(r.q_lo, s.q);
      r.q_hi = std::max(r.q_hi, s.q);
    }
    ++r.samples;
  }
  if (!have) fail(ErrorCode::NoCertifiedSamples, "no certified samples with q > 0");
  const int m = graph.m;
  RealInterval inv_m = RealInterval::exact(1) / RealInterval::exact(m);
  RealInterval target = RealInterval::exact(m + 1) / RealInterval::exact(m);
  RealInterval one = RealInterval::exact(1);
  r.lower = (w + one) * (inv_m + r.psi_low) - target;
  r.upper = (what + one) * (inv_m + r.psi_high) - target;
  return r;
}

}  // namespace dioph
