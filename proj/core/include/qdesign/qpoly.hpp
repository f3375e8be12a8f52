#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qdesign/bigint.hpp"

namespace qdesign {

/**
 * Polynomial in the indeterminate q with arbitrary-precision integer
 * coefficients, stored densely by ascending power.
 *
 * The coefficient vector is always trimmed: the last entry is nonzero, and
 * the zero polynomial is the empty vector.
 */
class QPolynomial {
 public:
  QPolynomial() = default;
  QPolynomial(int c);  // NOLINT(google-explicit-constructor)
  QPolynomial(const BigInt& c);  // NOLINT(google-explicit-constructor)
  explicit QPolynomial(std::vector<BigInt> coeffs);
  QPolynomial(std::initializer_list<int> coeffs);

  /// c * q^power
  static QPolynomial monomial(const BigInt& c, std::size_t power);
  static QPolynomial q_power(std::size_t power) { return monomial(BigInt(1), power); }

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  BigInt coeff(std::size_t power) const;
  const BigInt& leading() const;
  /// Number of nonzero terms.
  std::size_t term_count() const;
  /// Largest a with q^a dividing this polynomial; 0 for the zero polynomial.
  std::size_t low_power() const noexcept;

  BigInt eval(const BigInt& q0) const;

  QPolynomial operator-() const;
  QPolynomial& operator+=(const QPolynomial& rhs);
  QPolynomial& operator-=(const QPolynomial& rhs);
  QPolynomial& operator*=(const QPolynomial& rhs);

  friend QPolynomial operator+(QPolynomial lhs, const QPolynomial& rhs) { return lhs += rhs; }
  friend QPolynomial operator-(QPolynomial lhs, const QPolynomial& rhs) { return lhs -= rhs; }
  friend QPolynomial operator*(const QPolynomial& lhs, const QPolynomial& rhs);
  friend bool operator==(const QPolynomial& lhs, const QPolynomial& rhs) = default;

  /// Multiply by q^power.
  QPolynomial shifted(std::size_t power) const;

 private:
  void trim();

  std::vector<BigInt> coeffs_;
};

QPolynomial pow(const QPolynomial& base, std::uint64_t exp);

/// Quotient of p / r if r divides p in Z[q], nullopt otherwise.
std::optional<QPolynomial> try_exact_div(const QPolynomial& p, const QPolynomial& r);

/// Quotient of p / r; throws NotDivisible on a nonzero remainder and
/// std::invalid_argument for r = 0.
QPolynomial exact_div(const QPolynomial& p, const QPolynomial& r);

/// [n] = 1 + q + ... + q^(n-1)
QPolynomial q_integer(std::int64_t n);
/// [n]! = [1][2]...[n]
QPolynomial q_factorial(std::int64_t n);
/// Gaussian binomial coefficient; zero when k is outside {0, ..., n}.
QPolynomial gauss_poly(std::int64_t n, std::int64_t k);
/// The d-th cyclotomic polynomial Phi_d.
QPolynomial cyclotomic(std::int64_t d);

/**
 * q^qpower * prod Phi_d^mult * cofactor.
 *
 * cofactor carries whatever could not be written as a q-power times
 * cyclotomic factors, including the sign and any integer content.
 */
struct FactoredForm {
  std::size_t q_power = 0;
  std::map<std::int64_t, std::uint32_t> cyclotomic;
  QPolynomial cofactor = QPolynomial(1);

  QPolynomial expand() const;
  friend bool operator==(const FactoredForm&, const FactoredForm&) = default;
};

/// Throws std::invalid_argument("cannot factor zero") for p = 0.
FactoredForm factor_cyclotomic(const QPolynomial& p);

enum class PolyStyle { expanded, factored };

/// "q^8 - q^7 + q^3": descending powers, "q" for q^1, "2*q^2" for scaled terms.
std::string render_expanded(const QPolynomial& p);
/// "q^3*(q^5 - q^4 + 1)", "Phi2*Phi4*Phi6*Phi7", "1".
std::string render_factored(const FactoredForm& f);
std::string render(const QPolynomial& p, PolyStyle style);

/**
 * Parses the notation produced by render_expanded / render_factored, plus
 * implicit multiplication ("2q^2") and nested parentheses. Tokens: integers,
 * q, PhiN, +, -, *, ^, ( ). Throws std::invalid_argument on malformed input.
 */
QPolynomial parse_polynomial(std::string_view text);

std::ostream& operator<<(std::ostream& os, const QPolynomial& p);

}  // namespace qdesign
