#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "qdesign/bigint.hpp"
#include "qdesign/qpoly.hpp"

namespace qdesign {

/// A value that is either a polynomial in q or an integer at a fixed q0.
/// Arithmetic between the two kinds is rejected with std::logic_error.
class Scalar {
 public:
  explicit Scalar(QPolynomial p) : value_(std::move(p)) {}
  explicit Scalar(BigInt n) : value_(std::move(n)) {}

  bool is_symbolic() const noexcept { return std::holds_alternative<QPolynomial>(value_); }
  const QPolynomial& poly() const;
  const BigInt& integer() const;

  bool is_zero() const;
  bool is_one() const;
  /// -1, 0 or 1. Only meaningful for numeric scalars; symbolic sign is
  /// undefined and throws std::logic_error.
  int sign() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend bool operator==(const Scalar&, const Scalar&) = default;

  std::string str(PolyStyle style = PolyStyle::expanded) const;

 private:
  std::variant<QPolynomial, BigInt> value_;
};

/**
 * Evaluation context shared by every scalar of one computation: either
 * symbolic (Z[q]) or numeric at an integer point q0 >= 1. q0 = 1 gives
 * ordinary block designs; q0 is not required to be a prime power.
 */
class QMode {
 public:
  static QMode symbolic() { return QMode(); }
  static QMode numeric(const BigInt& q0);

  bool is_symbolic() const noexcept { return !q0_.has_value(); }
  bool is_numeric() const noexcept { return q0_.has_value(); }
  const BigInt& q0() const;
  /// "sym" or the decimal value of q0.
  std::string name() const;

  Scalar constant(const BigInt& c) const;
  Scalar zero() const { return constant(0); }
  Scalar one() const { return constant(1); }
  Scalar q_pow(std::uint64_t e) const;
  Scalar q_int(std::int64_t n) const;
  /// Zero for n < 0 or k outside {0, ..., n}.
  Scalar gauss(std::int64_t n, std::int64_t k) const;
  /// Polynomial as is (symbolic) or evaluated at q0 (numeric).
  Scalar lift(const QPolynomial& p) const;

  std::optional<Scalar> try_div(const Scalar& a, const Scalar& b) const;
  /// Throws NotDivisible.
  Scalar div(const Scalar& a, const Scalar& b) const;
  /// C(a, l) for a numeric scalar a; throws std::logic_error in symbolic mode.
  Scalar choose(const Scalar& a, std::int64_t l) const;

  /// Throws std::logic_error if s was built for the other kind of mode.
  void check(const Scalar& s) const;

  friend bool operator==(const QMode&, const QMode&) = default;

 private:
  QMode() = default;
  std::optional<BigInt> q0_;
};

}  // namespace qdesign
