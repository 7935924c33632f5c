#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dioph/polynomial.hpp"
#include "dioph/rational.hpp"

namespace dioph {

inline constexpr unsigned long kDefaultPrecisionCap = 4096;

enum class NumberKind { Algebraic, ContinuedFraction, Liouville, Decimal };

/// Source of partial quotients a1, a2, ... after the explicit prefix.
struct CfRule {
  enum class Type { Finite, Periodic, Fibonacci, ThueMorse, Arithmetic };
  Type type = Type::Finite;
  std::vector<mpz_class> period;    // Periodic
  std::vector<mpz_class> alphabet;  // Fibonacci, ThueMorse (two letters)
  mpz_class start = 1;              // Arithmetic: start + step*i, i = 0, 1, ...
  mpz_class step = 1;
};

/// Exponent rule e_k, k = 1, 2, ... of a lacunary series sum b^(-e_k).
struct LiouvilleRule {
  enum class Type { Factorial, Geometric };
  Type type = Type::Factorial;
  unsigned long ratio = 2;  // Geometric: e_k = ratio^k
};

/// Immutable, refinable description of a real number zeta.
class NumberDescriptor {
 public:
  static std::shared_ptr<const NumberDescriptor> algebraic(IntegerPolynomial minpoly,
                                                           RationalInterval isolating);
  static std::shared_ptr<const NumberDescriptor> continued_fraction(
      std::vector<mpz_class> prefix, CfRule rule);
  static std::shared_ptr<const NumberDescriptor> liouville(mpz_class base, LiouvilleRule rule);
  static std::shared_ptr<const NumberDescriptor> decimal(const std::string& value,
                                                         unsigned long digits);

  /// JSON schema: {"kind":"algebraic","minpoly":[-2,0,1],"interval":["1","2"]},
  /// {"kind":"liouville","base":2,"exponents":"factorial"},
  /// {"kind":"cf","prefix":[0],"rule":{"type":"periodic","period":[2]}},
  /// {"kind":"decimal","value":"0.12345","digits":5}.
  static std::shared_ptr<const NumberDescriptor> from_json(const std::string& text);
  std::string to_json() const;

  NumberKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  /// Interval containing zeta of width <= 2^-bits.
  RationalInterval refine(unsigned long bits) const;
  /// Largest precision refine accepts; unbounded except for decimal literals.
  unsigned long precision_limit() const;

  /// Exact value when zeta is rational (finite continued fraction).
  const std::optional<mpq_class>& exact_value() const { return exact_; }

  /// Squarefree defining polynomial with an isolating interval, when known:
  /// given algebraic descriptors, periodic continued fractions (quadratic),
  /// finite continued fractions (linear).
  const IntegerPolynomial* defining_polynomial() const {
    return defining_ ? &*defining_ : nullptr;
  }
  const RationalInterval& isolating_interval() const { return isolating_; }

  /// False only for decimal literals: their values cannot certify
  /// non-vanishing or exact ties.
  bool certifies_zero() const { return kind_ != NumberKind::Decimal; }

  /// Partial quotient a_i (i >= 0) of the continued-fraction kind; nullopt past
  /// the end of a finite expansion.
  std::optional<mpz_class> partial_quotient(std::size_t i) const;

  /// The same number shifted by an integer into (0,1). Liouville descriptors
  /// already comply and are returned unchanged.
  std::shared_ptr<const NumberDescriptor> unit_interval_normalized() const;

 private:
  NumberDescriptor() = default;
  void validate() const;
  void derive_periodic_quadratic();

  RationalInterval refine_algebraic(unsigned long bits) const;
  RationalInterval refine_cf(unsigned long bits) const;
  RationalInterval refine_liouville(unsigned long bits) const;
  RationalInterval refine_decimal(unsigned long bits) const;
  mpz_class liouville_exponent(unsigned long k) const;

  NumberKind kind_ = NumberKind::Algebraic;
  std::string label_;

  // algebraic (and derived defining polynomials)
  std::optional<IntegerPolynomial> defining_;
  RationalInterval isolating_;

  // continued fraction
  std::vector<mpz_class> prefix_;
  CfRule rule_;

  // liouville
  mpz_class base_ = 2;
  LiouvilleRule lrule_;

  // decimal
  std::string decimal_text_;
  unsigned long digits_ = 0;
  mpq_class decimal_center_;

  std::optional<mpq_class> exact_;

  mutable std::mutex cache_mutex_;
  mutable std::map<unsigned long, RationalInterval> cache_;
};

using Number = std::shared_ptr<const NumberDescriptor>;

/// Named numbers shipped with the tool.
Number preset_number(const std::string& name);
std::vector<std::string> preset_names();
/// The five numbers used across the oracle and acceptance matrices.
std::vector<std::string> stock_number_names();

/// Interval of P(zeta) with width <= 2^-bits (Horner, outward rounding).
RationalInterval eval_at(const IntegerPolynomial& p, const NumberDescriptor& zeta,
                         unsigned long bits);

enum class AbsOrder { Less, Greater, EqualExact };

/// Decides |P(zeta)| against |Q(zeta)|. Throws PrecisionExhausted at the
/// cap when the two cannot be separated.
AbsOrder compare_abs(const IntegerPolynomial& p, const IntegerPolynomial& q,
                     const NumberDescriptor& zeta, unsigned long cap = kDefaultPrecisionCap);

/// P(zeta) == 0 exactly. Unsupported for decimal literals.
bool is_zero_at(const IntegerPolynomial& p, const NumberDescriptor& zeta);

/// Certified interval of |P(zeta)| with relative width about 2^-extra_bits,
/// strictly positive unless P vanishes at zeta (then [0,0]).
RationalInterval abs_value_interval(const IntegerPolynomial& p, const NumberDescriptor& zeta,
                                    unsigned long extra_bits = 64,
                                    unsigned long cap = kDefaultPrecisionCap);

/// Number of distinct real roots of squarefree p in the closed interval.
std::size_t sturm_root_count(const IntegerPolynomial& p, const RationalInterval& interval);

}  // namespace dioph
