#include "dioph/number.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <map>
#include <json.hpp>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

using nlohmann::json;

namespace {

int sign_changes(const std::vector<IntegerPolynomial>& seq, const mpq_class& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<IntegerPolynomial> sturm_sequence(const IntegerPolynomial& p) {
  std::vector<IntegerPolynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    const auto& a = seq[seq.size() - 2];
    const auto& b = seq.back();
    // remainder of |lc b|^k a by b, negated; positive scalings keep the sign pattern
    std::vector<mpz_class> r = a.coeffs();
    mpz_class lb = abs(b.leading());
    int sb = sgn(b.leading());
    int db = b.degree();
    while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
      int dr = static_cast<int>(r.size()) - 1;
      mpz_class top = r.back() * sb;
      for (auto& c : r) c *= lb;
      for (int j = 0; j <= db; ++j) r[dr - db + j] -= top * b.coeffs()[j];
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    IntegerPolynomial rem(std::move(r));
    if (rem.is_zero()) break;
    mpz_class g = rem.content();
    rem = -IntegerPolynomial([&] {
      std::vector<mpz_class> v = rem.coeffs();
      for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      return v;
    }());
    seq.push_back(std::move(rem));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

bool is_squarefree(const IntegerPolynomial& p) {
  if (p.degree() <= 1) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

// P(T + a)
IntegerPolynomial taylor_shift(const IntegerPolynomial& p, const mpz_class& a) {
  std::vector<mpz_class> c = p.coeffs();
  int d = p.degree();
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) c[j] += a * c[j + 1];
  return IntegerPolynomial(std::move(c));
}

mpz_class floor_q(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

mpz_class json_int(const json& j, const char* what) {
  if (j.is_number_integer()) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), j.get<long>());
    return z;
  }
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0)
      fail(ErrorCode::InvalidDescriptor, std::string("bad integer in ") + what);
    return z;
  }
  fail(ErrorCode::InvalidDescriptor, std::string("expected an integer in ") + what);
}

std::vector<mpz_class> json_int_list(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::InvalidDescriptor, std::string(what) + " must be an array");
  std::vector<mpz_class> v;
  for (const auto& e : j) v.push_back(json_int(e, what));
  return v;
}

mpq_class json_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return mpq_class(json_int(j, "interval"));
  fail(ErrorCode::InvalidDescriptor, "interval endpoints must be strings or integers");
}

json int_list_json(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& z : v) {
    if (mpz_fits_slong_p(z.get_mpz_t()))
      a.push_back(z.get_si());
    else
      a.push_back(z.get_str());
  }
  return a;
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

// Fibonacci word over {0,1}: fixed point of 0 -> 01, 1 -> 0.
int fibonacci_letter(std::size_t i) {
  static std::mutex mu;
  static std::string word = "0";
  std::lock_guard<std::mutex> lock(mu);
  while (word.size() <= i) {
    std::string next;
    next.reserve(word.size() * 2);
    for (char c : word) next += (c == '0') ? "01" : "0";
    word = std::move(next);
  }
  return word[i] - '0';
}

}  // namespace

std::size_t sturm_root_count(const IntegerPolynomial& p, const RationalInterval& iv) {
  if (p.is_zero()) fail(ErrorCode::InvalidArgument, "root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  auto seq = sturm_sequence(p);
  int va = sign_changes(seq, iv.lo), vb = sign_changes(seq, iv.hi);
  std::size_t count = static_cast<std::size_t>(va - vb);
  if (p.sign_at(iv.lo) == 0) ++count;
  return count;
}

// ---------------------------------------------------------------- builders

std::shared_ptr<const NumberDescriptor> NumberDescriptor::algebraic(IntegerPolynomial minpoly,
                                                                    RationalInterval isolating) {
  std::shared_ptr<NumberDescriptor> d(new NumberDescriptor);
  d->kind_ = NumberKind::Algebraic;
  d->defining_ = minpoly.primitive_part();
  d->isolating_ = std::move(isolating);
  d->validate();
  if (d->defining_->degree() == 1) {
    const auto& c = d->defining_->coeffs();
    mpq_class x(-c[0], c[1]);
    x.canonicalize();
    d->exact_ = x;
  } else {
    if (d->defining_->sign_at(d->isolating_.lo) == 0) d->exact_ = d->isolating_.lo;
    if (d->defining_->sign_at(d->isolating_.hi) == 0) d->exact_ = d->isolating_.hi;
  }
  if (d->exact_) d->isolating_ = RationalInterval::point(*d->exact_);
  d->label_ = "algebraic " + d->defining_->to_string();
  return d;
}

std::shared_ptr<const NumberDescriptor> NumberDescriptor::continued_fraction(
    std::vector<mpz_class> prefix, CfRule rule) {
  std::shared_ptr<NumberDescriptor> d(new NumberDescriptor);
  d->kind_ = NumberKind::ContinuedFraction;
  d->prefix_ = std::move(prefix);
  d->rule_ = std::move(rule);
  d->validate();
  if (d->rule_.type == CfRule::Type::Finite) {
    // exact rational from the finite expansion
    mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (const auto& a : d->prefix_) {
      mpz_class p = a * p1 + p2, q = a * q1 + q2;
      p2 = p1, p1 = p, q2 = q1, q1 = q;
    }
    mpq_class x(p1, q1);
    x.canonicalize();
    d->exact_ = x;
    d->defining_ = IntegerPolynomial(std::vector<mpz_class>{-x.get_num(), x.get_den()});
    d->isolating_ = RationalInterval::point(x);
  } else if (d->rule_.type == CfRule::Type::Periodic) {
    d->derive_periodic_quadratic();
  }
  d->label_ = "continued fraction";
  return d;
}

std::shared_ptr<const NumberDescriptor> NumberDescriptor::liouville(mpz_class base,
                                                                    LiouvilleRule rule) {
  std::shared_ptr<NumberDescriptor> d(new NumberDescriptor);
  d->kind_ = NumberKind::Liouville;
  d->base_ = std::move(base);
  d->lrule_ = rule;
  d->validate();
  d->label_ = "liouville base " + d->base_.get_str();
  return d;
}

std::shared_ptr<const NumberDescriptor> NumberDescriptor::decimal(const std::string& value,
                                                                  unsigned long digits) {
  std::shared_ptr<NumberDescriptor> d(new NumberDescriptor);
  d->kind_ = NumberKind::Decimal;
  d->decimal_text_ = value;
  d->digits_ = digits;
  d->decimal_center_ = parse_rational(value);
  d->validate();
  d->label_ = "decimal " + value;
  return d;
}

void NumberDescriptor::validate() const {
  switch (kind_) {
    case NumberKind::Algebraic: {
      if (!defining_ || defining_->degree() < 1)
        fail(ErrorCode::InvalidDescriptor, "minimal polynomial must have degree >= 1");
      if (!is_squarefree(*defining_))
        fail(ErrorCode::InvalidDescriptor, "minimal polynomial is not squarefree");
      std::size_t roots = sturm_root_count(*defining_, isolating_);
      if (roots != 1)
        fail(ErrorCode::InvalidDescriptor,
             "isolating interval contains " + std::to_string(roots) + " roots, expected 1");
      break;
    }
    case NumberKind::ContinuedFraction: {
      auto positive = [](const std::vector<mpz_class>& v, std::size_t from) {
        for (std::size_t i = from; i < v.size(); ++i)
          if (v[i] <= 0) return false;
        return true;
      };
      if (!positive(prefix_, 1))
        fail(ErrorCode::InvalidDescriptor, "partial quotients after the first must be positive");
      std::size_t from = prefix_.empty() ? 1 : 0;
      switch (rule_.type) {
        case CfRule::Type::Finite:
          if (prefix_.empty()) fail(ErrorCode::InvalidDescriptor, "empty continued fraction");
          break;
        case CfRule::Type::Periodic:
          if (rule_.period.empty()) fail(ErrorCode::InvalidDescriptor, "empty period");
          if (!positive(rule_.period, from) || !positive(rule_.period, 0))
            fail(ErrorCode::InvalidDescriptor, "period entries must be positive");
          break;
        case CfRule::Type::Fibonacci:
        case CfRule::Type::ThueMorse:
          if (rule_.alphabet.size() != 2 || !positive(rule_.alphabet, 0))
            fail(ErrorCode::InvalidDescriptor, "word rules need two positive letters");
          break;
        case CfRule::Type::Arithmetic:
          if (rule_.start <= 0 || rule_.step < 0)
            fail(ErrorCode::InvalidDescriptor, "arithmetic rule needs start > 0, step >= 0");
          break;
      }
      break;
    }
    case NumberKind::Liouville:
      if (base_ < 2) fail(ErrorCode::InvalidDescriptor, "liouville base must be >= 2");
      if (lrule_.type == LiouvilleRule::Type::Geometric && lrule_.ratio < 2)
        fail(ErrorCode::InvalidDescriptor, "geometric exponent ratio must be >= 2");
      break;
    case NumberKind::Decimal:
      if (digits_ < 1) fail(ErrorCode::InvalidDescriptor, "declared precision must be >= 1 digit");
      break;
  }
}

void NumberDescriptor::derive_periodic_quadratic() {
  // y = [overline b] solves Q y^2 + (Q' - P) y - P' = 0, where P/Q and P'/Q'
  // are the last two convergents of one period.
  mpz_class P1 = 1, P2 = 0, Q1 = 0, Q2 = 1;
  for (const auto& b : rule_.period) {
    mpz_class p = b * P1 + P2, q = b * Q1 + Q2;
    P2 = P1, P1 = p, Q2 = Q1, Q1 = q;
  }
  // zeta = (p1 y + p2)/(q1 y + q2) from the prefix; y = (p2 - q2 zeta)/(q1 zeta - p1)
  mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  for (const auto& a : prefix_) {
    mpz_class p = a * p1 + p2, q = a * q1 + q2;
    p2 = p1, p1 = p, q2 = q1, q1 = q;
  }
  IntegerPolynomial num(std::vector<mpz_class>{p2, -q2});
  IntegerPolynomial den(std::vector<mpz_class>{-p1, q1});
  IntegerPolynomial quad = Q1 * multiply(num, num) + (Q2 - P1) * multiply(num, den) -
                           P2 * multiply(den, den);
  defining_ = quad.primitive_part();
  // convergent brackets until exactly one root is inside
  for (unsigned long bits = 8;; bits *= 2) {
    RationalInterval iv = refine_cf(bits);
    if (sturm_root_count(*defining_, iv) == 1) {
      isolating_ = iv;
      break;
    }
    if (bits > 1u << 16) fail(ErrorCode::InvalidDescriptor, "cannot isolate the periodic value");
  }
}

// ---------------------------------------------------------------- refinement

RationalInterval NumberDescriptor::refine(unsigned long bits) const {
  if (bits < 1) fail(ErrorCode::InvalidArgument, "precision must be >= 1 bit");
  if (exact_) return RationalInterval::point(*exact_);
  if (kind_ == NumberKind::Decimal) return refine_decimal(bits);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (auto it = cache_.find(bits); it != cache_.end()) return it->second;
  }
  RationalInterval iv;
  switch (kind_) {
    case NumberKind::Algebraic: iv = refine_algebraic(bits + 1); break;
    case NumberKind::ContinuedFraction:
      iv = defining_ ? refine_algebraic(bits + 1) : refine_cf(bits + 1);
      break;
    case NumberKind::Liouville: iv = refine_liouville(bits + 1); break;
    case NumberKind::Decimal: break;
  }
  RationalInterval out{round_down_dyadic(iv.lo, bits + 2), round_up_dyadic(iv.hi, bits + 2)};
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.emplace(bits, out);
  return out;
}

RationalInterval NumberDescriptor::refine_algebraic(unsigned long bits) const {
  RationalInterval iv = isolating_;
  const IntegerPolynomial& p = *defining_;
  int slo = p.sign_at(iv.lo);
  if (slo == 0) return RationalInterval::point(iv.lo);
  int shi = p.sign_at(iv.hi);
  if (shi == 0) return RationalInterval::point(iv.hi);
  mpq_class target = pow2_neg(bits);
  if (slo == shi) fail(ErrorCode::InvalidDescriptor, "isolating interval without sign change");
  // snap the endpoints to dyadics first so the numbers stay short
  mpq_class lo = iv.lo, hi = iv.hi;
  while (hi - lo > target) {
    mpq_class w = hi - lo;
    long e = floor_log2(w);
    unsigned long grid = static_cast<unsigned long>(std::max<long>(0, 4 - e));
    mpq_class mid = round_down_dyadic((lo + hi) / 2, grid);
    if (mid <= lo || mid >= hi) mid = (lo + hi) / 2;
    int s = p.sign_at(mid);
    if (s == 0) return RationalInterval::point(mid);
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

std::optional<mpz_class> NumberDescriptor::partial_quotient(std::size_t i) const {
  if (kind_ != NumberKind::ContinuedFraction)
    fail(ErrorCode::Unsupported, "partial quotients exist only for continued fractions");
  if (i < prefix_.size()) return prefix_[i];
  std::size_t j = i - prefix_.size();
  switch (rule_.type) {
    case CfRule::Type::Finite: return std::nullopt;
    case CfRule::Type::Periodic: return rule_.period[j % rule_.period.size()];
    case CfRule::Type::Fibonacci: return rule_.alphabet[fibonacci_letter(j)];
    case CfRule::Type::ThueMorse: return rule_.alphabet[__builtin_popcountll(j) & 1];
    case CfRule::Type::Arithmetic: return rule_.start + rule_.step * static_cast<unsigned long>(j);
  }
  return std::nullopt;
}

RationalInterval NumberDescriptor::refine_cf(unsigned long bits) const {
  // zeta lies between consecutive convergents; their distance is 1/(q_k q_{k+1})
  mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  mpz_class bound = 1;
  bound <<= bits;
  bool have_prev = false;
  for (std::size_t i = 0;; ++i) {
    auto a = partial_quotient(i);
    if (!a) {
      mpq_class x(p1, q1);
      x.canonicalize();
      return RationalInterval::point(x);
    }
    mpz_class p = *a * p1 + p2, q = *a * q1 + q2;
    if (have_prev && q * q1 >= bound) {
      mpq_class x(p, q), y(p1, q1);
      x.canonicalize();
      y.canonicalize();
      return x < y ? RationalInterval(x, y) : RationalInterval(y, x);
    }
    p2 = p1, p1 = p, q2 = q1, q1 = q;
    have_prev = true;
  }
}

mpz_class NumberDescriptor::liouville_exponent(unsigned long k) const {
  mpz_class e;
  switch (lrule_.type) {
    case LiouvilleRule::Type::Factorial: mpz_fac_ui(e.get_mpz_t(), k); break;
    case LiouvilleRule::Type::Geometric: mpz_ui_pow_ui(e.get_mpz_t(), lrule_.ratio, k); break;
  }
  return e;
}

RationalInterval NumberDescriptor::refine_liouville(unsigned long bits) const {
  // after K terms the tail lies in [b^-e_{K+1}, b^-e_{K+1} * b/(b-1)]
  mpq_class sum = 0;
  for (unsigned long k = 1;; ++k) {
    mpz_class e = liouville_exponent(k);
    if (!mpz_fits_ulong_p(e.get_mpz_t()))
      fail(ErrorCode::PrecisionExhausted, "liouville exponent too large");
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base_.get_mpz_t(), e.get_ui());
    mpq_class term(mpz_class(1), pw);
    if (e >= bits) {
      mpq_class hi_tail = term * mpq_class(base_, base_ - 1);
      hi_tail.canonicalize();
      return {sum + term, sum + hi_tail};
    }
    sum += term;
  }
}

unsigned long NumberDescriptor::precision_limit() const {
  if (kind_ != NumberKind::Decimal || exact_) return std::numeric_limits<unsigned long>::max();
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, digits_);
  // width 10^-D lies in [2^-(e+1), 2^-e) with e = floor(log2 10^D)
  long e = static_cast<long>(mpz_sizeinbase(p10.get_mpz_t(), 2)) - 1;
  return static_cast<unsigned long>(std::max<long>(1, e));
}

RationalInterval NumberDescriptor::refine_decimal(unsigned long bits) const {
  // the literal stands for every value that rounds to it
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, digits_);
  mpq_class half(mpz_class(1), 2 * p10);
  mpq_class width(mpz_class(1), p10);
  if (width > pow2_neg(bits))
    fail(ErrorCode::PrecisionExhausted, "decimal literal with " + std::to_string(digits_) +
                                            " digits cannot reach 2^-" + std::to_string(bits));
  return {decimal_center_ - half, decimal_center_ + half};
}

std::shared_ptr<const NumberDescriptor> NumberDescriptor::unit_interval_normalized() const {
  switch (kind_) {
    case NumberKind::Liouville: return liouville(base_, lrule_);
    case NumberKind::Decimal: {
      mpq_class v = decimal_center_ - mpq_class(floor_q(decimal_center_));
      return decimal(v.get_str(), digits_);
    }
    case NumberKind::ContinuedFraction: {
      if (prefix_.empty())
        fail(ErrorCode::Unsupported, "normalisation needs an explicit leading quotient");
      auto pre = prefix_;
      pre[0] = 0;
      if (rule_.type == CfRule::Type::Finite && pre.size() == 1)
        fail(ErrorCode::InvalidArgument, "integer value cannot be moved into (0,1)");
      return continued_fraction(pre, rule_);
    }
    case NumberKind::Algebraic: {
      if (exact_ && exact_->get_den() == 1)
        fail(ErrorCode::InvalidArgument, "integer value cannot be moved into (0,1)");
      RationalInterval iv = refine(16);
      for (unsigned long bits = 16; floor_q(iv.lo) != floor_q(iv.hi); bits *= 2) iv = refine(bits);
      mpz_class a = floor_q(iv.lo);
      return algebraic(taylor_shift(*defining_, a), {iv.lo - a, iv.hi - a});
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------- JSON

std::shared_ptr<const NumberDescriptor> NumberDescriptor::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidDescriptor, std::string("descriptor is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(ErrorCode::InvalidDescriptor, "descriptor needs a string field \"kind\"");
  std::string kind = j["kind"];
  std::shared_ptr<const NumberDescriptor> d;
  if (kind == "algebraic") {
    if (!j.contains("minpoly") || !j.contains("interval") || !j["interval"].is_array() ||
        j["interval"].size() != 2)
      fail(ErrorCode::InvalidDescriptor, "algebraic descriptor needs minpoly and a 2-element interval");
    IntegerPolynomial p(json_int_list(j["minpoly"], "minpoly"));
    mpq_class lo = json_rational(j["interval"][0]), hi = json_rational(j["interval"][1]);
    if (lo > hi) fail(ErrorCode::InvalidDescriptor, "interval endpoints out of order");
    d = algebraic(p, {lo, hi});
  } else if (kind == "cf" || kind == "continued-fraction") {
    std::vector<mpz_class> prefix;
    if (j.contains("prefix")) prefix = json_int_list(j["prefix"], "prefix");
    CfRule rule;
    if (j.contains("rule") && !j["rule"].is_null()) {
      const json& r = j["rule"];
      std::string type = r.value("type", "");
      if (type == "periodic") {
        rule.type = CfRule::Type::Periodic;
        rule.period = json_int_list(r.at("period"), "period");
      } else if (type == "fibonacci" || type == "thue-morse") {
        rule.type = type == "fibonacci" ? CfRule::Type::Fibonacci : CfRule::Type::ThueMorse;
        rule.alphabet = r.contains("alphabet") ? json_int_list(r["alphabet"], "alphabet")
                                               : std::vector<mpz_class>{1, 2};
      } else if (type == "arithmetic") {
        rule.type = CfRule::Type::Arithmetic;
        if (r.contains("start")) rule.start = json_int(r["start"], "start");
        if (r.contains("step")) rule.step = json_int(r["step"], "step");
      } else if (type == "finite" || type.empty()) {
        rule.type = CfRule::Type::Finite;
      } else {
        fail(ErrorCode::InvalidDescriptor, "unknown continued-fraction rule '" + type + "'");
      }
    }
    d = continued_fraction(prefix, rule);
  } else if (kind == "liouville") {
    mpz_class base = j.contains("base") ? json_int(j["base"], "base") : mpz_class(2);
    LiouvilleRule rule;
    const json e = j.value("exponents", json("factorial"));
    if (e.is_string()) {
      std::string s = e;
      if (s == "factorial") {
        rule.type = LiouvilleRule::Type::Factorial;
      } else if (s == "pow2" || s == "2^k") {
        rule = {LiouvilleRule::Type::Geometric, 2};
      } else if (s == "pow4" || s == "4^k") {
        rule = {LiouvilleRule::Type::Geometric, 4};
      } else {
        fail(ErrorCode::InvalidDescriptor, "unknown exponent rule '" + s + "'");
      }
    } else if (e.is_object() && e.contains("geometric") && e["geometric"].is_number_integer()) {
      long r = e["geometric"];
      if (r < 2) fail(ErrorCode::InvalidDescriptor, "geometric exponent ratio must be >= 2");
      rule = {LiouvilleRule::Type::Geometric, static_cast<unsigned long>(r)};
    } else {
      fail(ErrorCode::InvalidDescriptor, "exponents must be a rule name or {\"geometric\": r}");
    }
    d = liouville(base, rule);
  } else if (kind == "decimal") {
    if (!j.contains("value") || !j["value"].is_string() || !j.contains("digits") ||
        !j["digits"].is_number_integer())
      fail(ErrorCode::InvalidDescriptor, "decimal descriptor needs string value and integer digits");
    long digits = j["digits"];
    if (digits < 1) fail(ErrorCode::InvalidDescriptor, "declared precision must be >= 1 digit");
    d = decimal(j["value"].get<std::string>(), static_cast<unsigned long>(digits));
  } else {
    fail(ErrorCode::InvalidDescriptor, "unknown descriptor kind '" + kind + "'");
  }
  if (j.contains("label") && j["label"].is_string()) {
    const_cast<NumberDescriptor&>(*d).label_ = j["label"].get<std::string>();
  }
  return d;
}

std::string NumberDescriptor::to_json() const {
  json j;
  switch (kind_) {
    case NumberKind::Algebraic:
      j["kind"] = "algebraic";
      j["minpoly"] = int_list_json(defining_->coeffs());
      j["interval"] = {q_str(isolating_.lo), q_str(isolating_.hi)};
      break;
    case NumberKind::ContinuedFraction: {
      j["kind"] = "cf";
      j["prefix"] = int_list_json(prefix_);
      json r;
      switch (rule_.type) {
        case CfRule::Type::Finite: r["type"] = "finite"; break;
        case CfRule::Type::Periodic:
          r["type"] = "periodic";
          r["period"] = int_list_json(rule_.period);
          break;
        case CfRule::Type::Fibonacci:
          r["type"] = "fibonacci";
          r["alphabet"] = int_list_json(rule_.alphabet);
          break;
        case CfRule::Type::ThueMorse:
          r["type"] = "thue-morse";
          r["alphabet"] = int_list_json(rule_.alphabet);
          break;
        case CfRule::Type::Arithmetic:
          r["type"] = "arithmetic";
          r["start"] = int_list_json({rule_.start})[0];
          r["step"] = int_list_json({rule_.step})[0];
          break;
      }
      j["rule"] = r;
      break;
    }
    case NumberKind::Liouville:
      j["kind"] = "liouville";
      j["base"] = int_list_json({base_})[0];
      if (lrule_.type == LiouvilleRule::Type::Factorial)
        j["exponents"] = "factorial";
      else
        j["exponents"] = json{{"geometric", lrule_.ratio}};
      break;
    case NumberKind::Decimal:
      j["kind"] = "decimal";
      j["value"] = decimal_text_;
      j["digits"] = digits_;
      break;
  }
  j["label"] = label_;
  return j.dump();
}

// ---------------------------------------------------------------- presets

namespace {

struct PresetDef {
  const char* name;
  const char* json;
};

const PresetDef kPresets[] = {
    {"sqrt2m1", R"({"kind":"algebraic","minpoly":[-1,2,1],"interval":["0","1"],"label":"sqrt2m1"})"},
    {"cbrt2", R"({"kind":"algebraic","minpoly":[-2,0,0,1],"interval":["1","2"],"label":"cbrt2"})"},
    {"liouville2", R"({"kind":"liouville","base":2,"exponents":"factorial","label":"liouville2"})"},
    {"cf_fibonacci", R"({"kind":"cf","prefix":[0],"rule":{"type":"fibonacci","alphabet":[1,2]},"label":"cf_fibonacci"})"},
    {"cf_arith", R"({"kind":"cf","prefix":[0],"rule":{"type":"arithmetic","start":1,"step":1},"label":"cf_arith"})"},
    {"sqrt2", R"({"kind":"algebraic","minpoly":[-2,0,1],"interval":["1","2"],"label":"sqrt2"})"},
    {"cf_sqrt2m1", R"({"kind":"cf","prefix":[0],"rule":{"type":"periodic","period":[2]},"label":"cf_sqrt2m1"})"},
    {"cf_thue_morse", R"({"kind":"cf","prefix":[0],"rule":{"type":"thue-morse","alphabet":[1,2]},"label":"cf_thue_morse"})"},
    {"liouville10", R"({"kind":"liouville","base":10,"exponents":"factorial","label":"liouville10"})"},
};

}  // namespace

Number preset_number(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, Number> made;
  std::lock_guard<std::mutex> lock(mu);
  auto it = made.find(name);
  if (it != made.end()) return it->second;
  for (const auto& p : kPresets) {
    if (name == p.name) {
      Number n = NumberDescriptor::from_json(p.json);
      made[name] = n;
      return n;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> v;
  for (const auto& p : kPresets) v.emplace_back(p.name);
  return v;
}

std::vector<std::string> stock_number_names() {
  return {"sqrt2m1", "cbrt2", "liouville2", "cf_fibonacci", "cf_arith"};
}

// ---------------------------------------------------------------- evaluation

namespace {

RationalInterval horner(const IntegerPolynomial& p, const RationalInterval& x, unsigned long grid) {
  const auto& c = p.coeffs();
  RationalInterval acc = RationalInterval::point(mpq_class(c.back()));
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = acc * x + mpq_class(c[i]);
    acc = {round_down_dyadic(acc.lo, grid), round_up_dyadic(acc.hi, grid)};
  }
  return acc;
}

unsigned long decimal_bits(const NumberDescriptor& z) { return z.precision_limit(); }

}  // namespace

RationalInterval eval_at(const IntegerPolynomial& p, const NumberDescriptor& zeta,
                         unsigned long bits) {
  if (p.is_zero()) return RationalInterval::point(0);
  if (p.degree() == 0) return RationalInterval::point(mpq_class(p.coeffs()[0]));
  if (zeta.exact_value()) return RationalInterval::point(p.evaluate(*zeta.exact_value()));
  RationalInterval z0 = zeta.kind() == NumberKind::Decimal ? zeta.refine(decimal_bits(zeta))
                                                           : zeta.refine(8);
  mpq_class m = std::max(abs(z0.lo), abs(z0.hi)) + 1;
  mpq_class dsum = 0, mp = 1;
  for (int i = 1; i <= p.degree(); ++i) {
    dsum += mpq_class(abs(p.coeffs()[i]) * i) * mp;
    mp *= m;
  }
  unsigned long extra = static_cast<unsigned long>(std::max<long>(0, floor_log2(dsum) + 1)) + 2;
  unsigned long pp = bits + extra;
  mpq_class target = pow2_neg(bits);
  const unsigned long limit = zeta.precision_limit();
  for (int round = 0;; ++round) {
    pp = std::min(pp, limit);
    RationalInterval x = zeta.refine(pp);
    RationalInterval r = horner(p, x, pp + 8 + static_cast<unsigned long>(p.degree()));
    if (r.width() <= target) return r;
    if (round > 64 || pp == limit)
      fail(ErrorCode::PrecisionExhausted, "evaluation of " + p.to_string() + " did not reach 2^-" + std::to_string(bits));
    pp += 16;
  }
}

bool is_zero_at(const IntegerPolynomial& p, const NumberDescriptor& zeta) {
  if (p.is_zero()) fail(ErrorCode::InvalidArgument, "is_zero_at needs a nonzero polynomial");
  if (zeta.kind() == NumberKind::Decimal)
    fail(ErrorCode::Unsupported, "decimal literals cannot certify vanishing");
  if (p.degree() == 0) return false;
  if (zeta.exact_value()) return p.evaluate(*zeta.exact_value()) == 0;
  const IntegerPolynomial* g = zeta.defining_polynomial();
  if (!g) return false;
  IntegerPolynomial d = poly_gcd(p, *g);
  if (d.degree() < 1) return false;
  return sturm_root_count(d, zeta.isolating_interval()) >= 1;
}

AbsOrder compare_abs(const IntegerPolynomial& p, const IntegerPolynomial& q,
                     const NumberDescriptor& zeta, unsigned long cap) {
  if (p.is_zero() || q.is_zero()) fail(ErrorCode::InvalidArgument, "compare_abs needs nonzero polynomials");
  if (equal_up_to_sign(p, q)) return AbsOrder::EqualExact;
  if (zeta.exact_value()) {
    mpq_class a = abs(p.evaluate(*zeta.exact_value())), b = abs(q.evaluate(*zeta.exact_value()));
    return a < b ? AbsOrder::Less : a > b ? AbsOrder::Greater : AbsOrder::EqualExact;
  }
  if (zeta.defining_polynomial()) {
    IntegerPolynomial d = p - q, s = p + q;
    if ((!d.is_zero() && is_zero_at(d, zeta)) || (!s.is_zero() && is_zero_at(s, zeta)))
      return AbsOrder::EqualExact;
  }
  unsigned long bits = 64;
  for (;;) {
    unsigned long b = std::min(bits, cap);
    if (zeta.kind() == NumberKind::Decimal) b = std::min(b, decimal_bits(zeta) / 2 + 1);
    RationalInterval a = eval_at(p, zeta, b).abs();
    RationalInterval c = eval_at(q, zeta, b).abs();
    if (a.hi < c.lo) return AbsOrder::Less;
    if (a.lo > c.hi) return AbsOrder::Greater;
    if (b >= cap || (zeta.kind() == NumberKind::Decimal && b >= decimal_bits(zeta) / 2 + 1)) break;
    bits *= 2;
  }
  fail(ErrorCode::PrecisionExhausted,
       "cannot separate |" + p.to_string() + "| and |" + q.to_string() + "| at " +
           std::to_string(cap) + " bits");
}

RationalInterval abs_value_interval(const IntegerPolynomial& p, const NumberDescriptor& zeta,
                                    unsigned long extra_bits, unsigned long cap) {
  if (p.is_zero()) return RationalInterval::point(0);
  if (zeta.certifies_zero() && is_zero_at(p, zeta)) return RationalInterval::point(0);
  unsigned long limit = cap + extra_bits;
  if (zeta.kind() == NumberKind::Decimal) limit = std::max<unsigned long>(2, decimal_bits(zeta) / 2);
  unsigned long bits = std::min<unsigned long>(64, limit);
  for (;;) {
    RationalInterval v = eval_at(p, zeta, bits);
    if (!v.contains_zero()) {
      RationalInterval a = v.abs();
      long e = floor_log2(a.lo);
      long need = static_cast<long>(extra_bits) - e + 1;
      if (need <= static_cast<long>(bits) || bits >= limit) return a;
      bits = std::min<unsigned long>(static_cast<unsigned long>(need), limit);
      continue;
    }
    if (bits >= limit) break;
    bits = std::min(bits * 2, limit);
  }
  fail(ErrorCode::PrecisionExhausted, "|" + p.to_string() + "(zeta)| not separated from 0 at " +
                                          std::to_string(limit) + " bits");
}

}  // namespace dioph
