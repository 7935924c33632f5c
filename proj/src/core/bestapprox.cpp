#include "dioph/bestapprox.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "dioph/error.hpp"
#include "fixed_eval.hpp"

namespace dioph {

using detail::FixedInterval;
using detail::FixedPowers;
using detail::i128;
using detail::kI128Max;

const char* to_string(ApproxNote::Kind kind) {
  switch (kind) {
    case ApproxNote::Kind::Tie: return "Tie";
    case ApproxNote::Kind::NearTie: return "NearTie";
    case ApproxNote::Kind::EqualIncumbent: return "EqualIncumbent";
  }
  return "?";
}

const BestApproxRecord& BestApproxSequence::at(std::size_t k) const {
  if (k < 1 || k > records.size())
    fail(ErrorCode::IndexOutOfRange, "record index " + std::to_string(k) + " outside 1.." +
                                         std::to_string(records.size()));
  return records[k - 1];
}

namespace {

IntegerPolynomial canonical_of(const std::vector<std::int64_t>& c) {
  return IntegerPolynomial::from_int64(c).canonical();
}

enum class Cmp { Less, Greater, Equal, Undecided };

// Best polynomial of one height shell, with the exact ties found on the way.
struct ShellBest {
  bool have = false;
  std::vector<std::int64_t> coeffs;
  FixedInterval abs;  // abs.lo/abs.hi hold |value| bounds
  IntegerPolynomial poly;
  std::vector<IntegerPolynomial> ties;
  std::vector<std::pair<IntegerPolynomial, IntegerPolynomial>> near_ties;
};

struct Engine {
  int n;
  Number zeta;
  unsigned long cap;
  FixedPowers fx;
  bool zero_certifiable;

  Engine(int n_, Number z, std::int64_t h_max, unsigned long cap_)
      : n(n_), zeta(std::move(z)), cap(cap_), fx(FixedPowers::build(*zeta, n_, h_max)),
        zero_certifiable(zeta->certifies_zero()) {}

  Cmp compare_exact(const IntegerPolynomial& a, const IntegerPolynomial& b) const {
    try {
      switch (compare_abs(a, b, *zeta, cap)) {
        case AbsOrder::Less: return Cmp::Less;
        case AbsOrder::Greater: return Cmp::Greater;
        case AbsOrder::EqualExact: return Cmp::Equal;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted) throw;
    }
    return Cmp::Undecided;
  }

  // Offer a candidate with raw coefficients c and value interval v.
  // Returns false for exact zeros.
  void offer(ShellBest& s, const std::int64_t* c, const FixedInterval& v) const {
    FixedInterval a{v.abs_lo(), v.abs_hi()};
    if (v.contains_zero()) {
      IntegerPolynomial p = IntegerPolynomial::from_int64(std::span<const std::int64_t>(c, n + 1));
      if (p.is_zero()) return;
      if (!zero_certifiable)
        fail(ErrorCode::PrecisionExhausted,
             "cannot certify " + p.to_string() + " nonzero at a decimal literal");
      if (is_zero_at(p, *zeta)) return;
    }
    if (!s.have) {
      s.have = true;
      s.coeffs.assign(c, c + n + 1);
      s.abs = a;
      s.poly = canonical_of(s.coeffs);
      return;
    }
    if (a.lo > s.abs.hi) return;
    if (a.hi < s.abs.lo) {
      replace(s, c, a);
      return;
    }
    std::vector<std::int64_t> cv(c, c + n + 1);
    IntegerPolynomial p = canonical_of(cv);
    if (p == s.poly) return;
    switch (compare_exact(p, s.poly)) {
      case Cmp::Less: replace(s, c, a); break;
      case Cmp::Greater: break;
      case Cmp::Equal:
        if (lex_less(p, s.poly)) {
          IntegerPolynomial old = s.poly;
          auto ties = std::move(s.ties);
          replace(s, c, a);
          s.ties = std::move(ties);
          s.ties.push_back(old);
        } else {
          s.ties.push_back(p);
        }
        break;
      case Cmp::Undecided:
        s.near_ties.emplace_back(s.poly, p);
        if (lex_less(p, s.poly)) {
          auto near = std::move(s.near_ties);
          replace(s, c, a);
          s.near_ties = std::move(near);
        }
        break;
    }
  }

  void replace(ShellBest& s, const std::int64_t* c, const FixedInterval& a) const {
    s.coeffs.assign(c, c + n + 1);
    s.abs = a;
    s.poly = canonical_of(s.coeffs);
    s.ties.clear();
    s.near_ties.clear();
  }

  void merge(ShellBest& into, ShellBest& from) const {
    if (!from.have) return;
    if (!into.have) {
      into = std::move(from);
      return;
    }
    Cmp c;
    if (from.abs.hi < into.abs.lo)
      c = Cmp::Less;
    else if (from.abs.lo > into.abs.hi)
      c = Cmp::Greater;
    else
      c = compare_exact(from.poly, into.poly);
    switch (c) {
      case Cmp::Less: into = std::move(from); return;
      case Cmp::Greater: return;
      case Cmp::Equal:
      case Cmp::Undecided: {
        if (c == Cmp::Undecided) into.near_ties.emplace_back(into.poly, from.poly);
        bool take = lex_less(from.poly, into.poly);
        ShellBest& win = take ? from : into;
        ShellBest& lose = take ? into : from;
        if (c == Cmp::Equal) {
          win.ties.insert(win.ties.end(), lose.ties.begin(), lose.ties.end());
          win.ties.push_back(lose.poly);
        }
        win.near_ties.insert(win.near_ties.end(), lose.near_ties.begin(), lose.near_ties.end());
        if (take) into = std::move(from);
        return;
      }
    }
  }
};

// Record bookkeeping shared by all enumeration strategies.
struct Recorder {
  Recorder(const Engine& e, BestApproxSequence& s) : eng(e), seq(s) {}

  const Engine& eng;
  BestApproxSequence& seq;
  bool have = false;
  IntegerPolynomial inc_poly;
  i128 inc_hi = kI128Max;
  i128 inc_lo = 0;

  void close_shell(std::int64_t h, ShellBest& s) {
    if (!s.have) return;
    std::sort(s.ties.begin(), s.ties.end(), lex_less);
    for (auto& [a, b] : s.near_ties)
      seq.notes.push_back({ApproxNote::Kind::NearTie, h, a, b});
    bool record = false;
    if (!have) {
      record = true;
    } else if (s.abs.hi < inc_lo) {
      record = true;
    } else if (s.abs.lo <= inc_hi) {
      switch (eng.compare_exact(s.poly, inc_poly)) {
        case Cmp::Less: record = true; break;
        case Cmp::Equal: seq.notes.push_back({ApproxNote::Kind::EqualIncumbent, h, inc_poly, s.poly}); break;
        case Cmp::Undecided: seq.notes.push_back({ApproxNote::Kind::NearTie, h, inc_poly, s.poly}); break;
        case Cmp::Greater: break;
      }
    }
    if (!record) return;
    for (const auto& t : s.ties) seq.notes.push_back({ApproxNote::Kind::Tie, h, s.poly, t});
    BestApproxRecord r;
    r.k = seq.records.size() + 1;
    r.poly = s.poly;
    r.height = r.poly.height();
    r.degree = r.poly.degree();
    r.value = abs_value_interval(r.poly, *eng.zeta, 64, eng.cap);
    seq.records.push_back(std::move(r));
    have = true;
    inc_poly = s.poly;
    inc_lo = s.abs.lo;
    inc_hi = s.abs.hi;
  }
};

void check_args(int n, const Number& zeta, std::int64_t h_max) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (h_max < 1) fail(ErrorCode::InvalidArgument, "H_max must be >= 1");
  if (!zeta) fail(ErrorCode::InvalidArgument, "missing number descriptor");
  if (h_max > (std::int64_t{1} << 40)) fail(ErrorCode::BudgetExceeded, "H_max too large");
}

// One shell of the pruned search. The shell holds polynomials of height
// exactly H; j is the lowest index with |c_j| = H and c_j = +H picks one of
// each pair +-P. One further coefficient (c_0, or c_1 when j = 0) is solved
// for instead of enumerated.
class ShellSearch {
 public:
  ShellSearch(const Engine& eng, std::int64_t H, int j, i128 inc_hi)
      : eng_(eng), fx_(eng.fx), n_(eng.n), H_(H), j_(j), s_(j != 0 ? 0 : 1), inc_hi_(inc_hi) {
    c_.assign(n_ + 1, 0);
    range_.assign(n_ + 1, 0);
    for (int i = 0; i <= n_; ++i) range_[i] = i < j_ ? H_ - 1 : H_;
    for (int i = n_; i >= 0; --i)
      if (i != j_ && i != s_) order_.push_back(i);
    // largest contribution of the variables not yet fixed at each depth
    tail_.assign(order_.size() + 1, 0);
    tail_[order_.size()] = fx_.mag[s_] * range_[s_];
    for (int d = static_cast<int>(order_.size()) - 1; d >= 0; --d)
      tail_[d] = tail_[d + 1] + fx_.mag[order_[d]] * range_[order_[d]];
    c_[j_] = H_;
  }

  int first_var() const { return order_.empty() ? -1 : order_[0]; }
  std::int64_t range_of(int i) const { return range_[i]; }

  // Run with the first enumerated variable pinned to v (ignored when none).
  void run(ShellBest& best, std::int64_t v) {
    best_ = &best;
    FixedInterval base = fx_.term(H_, j_);
    if (order_.empty()) {
      leaf(base);
      return;
    }
    int i = order_[0];
    c_[i] = v;
    FixedInterval t = fx_.term(v, i);
    recurse(1, {base.lo + t.lo, base.hi + t.hi});
  }

 private:
  i128 threshold() const {
    i128 t = inc_hi_;
    if (best_->have && best_->abs.hi < t) t = best_->abs.hi;
    return t;
  }

  void recurse(std::size_t depth, FixedInterval s) {
    if (s.abs_lo() > tail_[depth] && s.abs_lo() - tail_[depth] > threshold()) return;
    if (depth == order_.size()) {
      leaf(s);
      return;
    }
    int i = order_[depth];
    std::int64_t r = range_[i];
    for (std::int64_t v = -r; v <= r; ++v) {
      c_[i] = v;
      FixedInterval t = fx_.term(v, i);
      recurse(depth + 1, {s.lo + t.lo, s.hi + t.hi});
    }
    c_[i] = 0;
  }

  void leaf(const FixedInterval& s) {
    std::int64_t r = range_[s_];
    i128 zlo = fx_.lo[s_], zhi = fx_.hi[s_];
    std::int64_t cl = -r, ch = r;
    if (zlo > 0 || zhi < 0) {
      // minimiser of |S + c z| over real c lies among the quotients -S/z
      i128 q[4] = {-s.lo, -s.hi, -s.lo, -s.hi};
      i128 d[4] = {zlo, zlo, zhi, zhi};
      i128 fl = kI128Max, ce = -kI128Max;
      for (int k = 0; k < 4; ++k) {
        fl = std::min(fl, detail::floor_div(q[k], d[k]));
        ce = std::max(ce, detail::ceil_div(q[k], d[k]));
      }
      i128 lo = std::clamp<i128>(fl - 1, -r, r), hi = std::clamp<i128>(ce + 1, -r, r);
      cl = static_cast<std::int64_t>(lo);
      ch = static_cast<std::int64_t>(hi);
    }
    for (std::int64_t v = cl; v <= ch; ++v) {
      c_[s_] = v;
      FixedInterval t = fx_.term(v, s_);
      FixedInterval val{s.lo + t.lo, s.hi + t.hi};
      if (val.abs_lo() > threshold()) continue;
      eng_.offer(*best_, c_.data(), val);
    }
    c_[s_] = 0;
  }

  const Engine& eng_;
  const FixedPowers& fx_;
  int n_;
  std::int64_t H_;
  int j_;
  int s_;
  i128 inc_hi_;
  std::vector<std::int64_t> c_;
  std::vector<std::int64_t> range_;
  std::vector<int> order_;
  std::vector<i128> tail_;
  ShellBest* best_ = nullptr;
};

ShellBest search_shell(const Engine& eng, std::int64_t H, i128 inc_hi, unsigned jobs) {
  struct Task {
    int j;
    std::int64_t v;
  };
  std::vector<Task> tasks;
  for (int j = 0; j <= eng.n; ++j) {
    ShellSearch probe(eng, H, j, inc_hi);
    int f = probe.first_var();
    if (f < 0) {
      tasks.push_back({j, 0});
    } else {
      for (std::int64_t v = -probe.range_of(f); v <= probe.range_of(f); ++v) tasks.push_back({j, v});
    }
  }
  auto work = [&](unsigned w, unsigned stride, ShellBest& out) {
    for (std::size_t t = w; t < tasks.size(); t += stride) {
      ShellSearch s(eng, H, tasks[t].j, inc_hi);
      s.run(out, tasks[t].v);
    }
  };
  if (jobs <= 1 || tasks.size() < 2 * static_cast<std::size_t>(jobs)) {
    ShellBest best;
    work(0, 1, best);
    return best;
  }
  std::vector<ShellBest> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        work(w, jobs, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  ShellBest best;
  for (auto& p : parts) eng.merge(best, p);
  return best;
}

}  // namespace

BestApproxSequence best_approx_sequence(int n, Number zeta, std::int64_t h_max,
                                        const BestApproxOptions& options) {
  check_args(n, zeta, h_max);
  Engine eng(n, zeta, h_max, options.cap);
  BestApproxSequence seq;
  seq.n = n;
  seq.zeta = zeta;
  seq.h_max = h_max;
  Recorder rec(eng, seq);
  for (std::int64_t H = 1; H <= h_max; ++H) {
    ShellBest best = search_shell(eng, H, rec.have ? rec.inc_hi : kI128Max, options.jobs);
    rec.close_shell(H, best);
    if (options.progress) options.progress(H);
  }
  return seq;
}

BestApproxSequence oracle_best_approx(int n, Number zeta, std::int64_t h_max,
                                      const BestApproxOptions& options, std::uint64_t budget) {
  check_args(n, zeta, h_max);
  double box = std::pow(2.0 * static_cast<double>(h_max) + 1.0, n + 1);
  if (box > static_cast<double>(budget))
    fail(ErrorCode::BudgetExceeded, "oracle box (2H+1)^(n+1) = " + std::to_string(box) +
                                        " exceeds the budget " + std::to_string(budget));
  Engine eng(n, zeta, h_max, options.cap);
  const FixedPowers& fx = eng.fx;
  std::vector<ShellBest> per_height(static_cast<std::size_t>(h_max) + 1);
  std::vector<std::int64_t> c(n + 1, 0);

  // Every vector with positive leading coefficient, highest degree first.
  auto visit = [&](auto&& self, int i, FixedInterval s, std::int64_t h, bool lead) -> void {
    if (i < 0) {
      if (!lead) return;
      eng.offer(per_height[h], c.data(), s);
      return;
    }
    std::int64_t from = lead ? -h_max : 0;
    for (std::int64_t v = from; v <= h_max; ++v) {
      c[i] = v;
      FixedInterval t = fx.term(v, i);
      self(self, i - 1, {s.lo + t.lo, s.hi + t.hi}, std::max(h, v < 0 ? -v : v), lead || v != 0);
    }
    c[i] = 0;
  };
  visit(visit, n, FixedInterval{}, 0, false);

  BestApproxSequence seq;
  seq.n = n;
  seq.zeta = zeta;
  seq.h_max = h_max;
  Recorder rec(eng, seq);
  for (std::int64_t H = 1; H <= h_max; ++H) {
    rec.close_shell(H, per_height[H]);
    if (options.progress) options.progress(H);
  }
  return seq;
}

BestApproxSequence best_approx_linear(Number zeta, std::int64_t h_max,
                                      const BestApproxOptions& options) {
  check_args(1, zeta, h_max);
  Engine eng(1, zeta, h_max, options.cap);
  const FixedPowers& fx = eng.fx;
  BestApproxSequence seq;
  seq.n = 1;
  seq.zeta = zeta;
  seq.h_max = h_max;
  Recorder rec(eng, seq);
  for (std::int64_t H = 1; H <= h_max; ++H) {
    ShellBest best;
    std::int64_t c[2];
    auto offer = [&](std::int64_t a, std::int64_t b) {
      c[0] = a;
      c[1] = b;
      eng.offer(best, c, fx.eval(c, 2));
    };
    // b = H: the a nearest to -H zeta
    FixedInterval bz = fx.term(H, 1);
    i128 one = fx.lo[0];
    i128 fl = detail::floor_div(-bz.hi, one) - 1, ce = detail::ceil_div(-bz.lo, one) + 1;
    for (i128 a = std::max<i128>(fl, -H); a <= std::min<i128>(ce, H); ++a)
      offer(static_cast<std::int64_t>(a), H);
    if (fl > H) offer(H, H);
    if (ce < -H) offer(-H, H);
    // |a| = H, 0 <= b < H
    for (std::int64_t b = 0; b < H; ++b) {
      offer(H, b);
      if (b > 0) offer(-H, b);
    }
    rec.close_shell(H, best);
    if (options.progress) options.progress(H);
  }
  return seq;
}

bool same_records(const BestApproxSequence& a, const BestApproxSequence& b, std::string* diff) {
  std::size_t n = std::min(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.records[i].poly != b.records[i].poly) {
      if (diff)
        *diff = "record " + std::to_string(i + 1) + ": " + a.records[i].poly.to_string() + " vs " +
                b.records[i].poly.to_string();
      return false;
    }
  }
  if (a.records.size() != b.records.size()) {
    if (diff)
      *diff = "record counts " + std::to_string(a.records.size()) + " vs " +
              std::to_string(b.records.size());
    return false;
  }
  return true;
}

bool monotone_records(const BestApproxSequence& seq) {
  for (std::size_t i = 0; i < seq.records.size(); ++i) {
    const auto& r = seq.records[i];
    if (r.value.lo <= 0 || r.height != r.poly.height()) return false;
    if (i == 0) continue;
    const auto& p = seq.records[i - 1];
    if (!(p.height < r.height)) return false;
    if (!(r.value.hi < p.value.lo)) return false;
  }
  return true;
}

RealInterval record_exponent(const BestApproxRecord& r) {
  if (r.height < 2) fail(ErrorCode::DomainError, "exponent ratio needs H >= 2");
  RealInterval lv = log_interval(r.value);
  RealInterval lh = log_interval(r.height);
  return (-lv) / lh;
}

std::vector<UniformRatioRow> uniform_ratio_report(const BestApproxSequence& seq, std::size_t k0) {
  std::vector<UniformRatioRow> rows;
  bool have = false;
  RealInterval run;
  for (std::size_t k = 1; k < seq.records.size(); ++k) {
    const auto& r = seq.records[k - 1];
    const auto& next = seq.records[k];
    if (next.height < 2) continue;
    RealInterval u = (-log_interval(r.value)) / log_interval(next.height);
    if (k >= k0) {
      run = have ? min(run, u) : u;
      have = true;
    }
    rows.push_back({k, u, have ? run : u});
  }
  return rows;
}

std::vector<GrowthRow> ehklar_report(const BestApproxSequence& seq) {
  std::vector<GrowthRow> rows;
  for (std::size_t k = 1; k < seq.records.size(); ++k) {
    const auto& r = seq.records[k - 1];
    if (r.height < 2) continue;
    rows.push_back({k, log_interval(seq.records[k].height) / log_interval(r.height)});
  }
  return rows;
}

}  // namespace dioph
