#include "qdesign/scalar.hpp"

#include <algorithm>
#include <stdexcept>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

[[noreturn]] void mixed() { throw std::logic_error("mixing symbolic and numeric scalars"); }

}  // namespace

const QPolynomial& Scalar::poly() const {
  if (!is_symbolic()) throw std::logic_error("scalar is numeric, not symbolic");
  return std::get<QPolynomial>(value_);
}

const BigInt& Scalar::integer() const {
  if (is_symbolic()) throw std::logic_error("scalar is symbolic, not numeric");
  return std::get<BigInt>(value_);
}

bool Scalar::is_zero() const { return is_symbolic() ? poly().is_zero() : integer() == 0; }

bool Scalar::is_one() const { return is_symbolic() ? poly().is_one() : integer() == 1; }

int Scalar::sign() const {
  if (is_symbolic()) throw std::logic_error("sign of a symbolic scalar is undefined");
  const auto& n = integer();
  return n < 0 ? -1 : (n > 0 ? 1 : 0);
}

Scalar Scalar::operator-() const {
  if (is_symbolic()) return Scalar(-poly());
  return Scalar(BigInt(-integer()));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (is_symbolic() != rhs.is_symbolic()) mixed();
  if (is_symbolic()) {
    std::get<QPolynomial>(value_) += rhs.poly();
  } else {
    std::get<BigInt>(value_) += rhs.integer();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (is_symbolic() != rhs.is_symbolic()) mixed();
  if (is_symbolic()) {
    std::get<QPolynomial>(value_) -= rhs.poly();
  } else {
    std::get<BigInt>(value_) -= rhs.integer();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (is_symbolic() != rhs.is_symbolic()) mixed();
  if (is_symbolic()) {
    std::get<QPolynomial>(value_) *= rhs.poly();
  } else {
    std::get<BigInt>(value_) *= rhs.integer();
  }
  return *this;
}

std::string Scalar::str(PolyStyle style) const {
  if (is_symbolic()) return render(poly(), style);
  return integer().str();
}

// ---------------------------------------------------------------------------

QMode QMode::numeric(const BigInt& q0) {
  if (q0 < 1) throw std::invalid_argument("q must be a positive integer, got " + q0.str());
  QMode m;
  m.q0_ = q0;
  return m;
}

const BigInt& QMode::q0() const {
  if (!q0_) throw std::logic_error("symbolic mode has no evaluation point");
  return *q0_;
}

std::string QMode::name() const { return q0_ ? q0_->str() : "sym"; }

Scalar QMode::constant(const BigInt& c) const {
  if (is_symbolic()) return Scalar(QPolynomial(c));
  return Scalar(c);
}

Scalar QMode::q_pow(std::uint64_t e) const {
  if (is_symbolic()) return Scalar(QPolynomial::q_power(e));
  return Scalar(ipow(*q0_, e));
}

Scalar QMode::q_int(std::int64_t n) const {
  if (n < 0) throw std::invalid_argument("q_int: n must be non-negative");
  if (is_symbolic()) return Scalar(q_integer(n));
  if (*q0_ == 1) return Scalar(BigInt(n));
  return Scalar(BigInt((ipow(*q0_, static_cast<std::uint64_t>(n)) - 1) / (*q0_ - 1)));
}

Scalar QMode::gauss(std::int64_t n, std::int64_t k) const {
  if (n < 0 || k < 0 || k > n) return zero();
  if (is_symbolic()) return Scalar(gauss_poly(n, k));
  k = std::min(k, n - k);
  // [n choose i+1] = [n choose i] * [n-i] / [i+1], exact at every step
  BigInt g = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    g *= q_int(n - i).integer();
    BigInt quo;
    BigInt rem;
    boost::multiprecision::divide_qr(g, q_int(i + 1).integer(), quo, rem);
    if (rem != 0) throw InvariantViolation("gauss: inexact division");
    g = quo;
  }
  return Scalar(g);
}

Scalar QMode::lift(const QPolynomial& p) const {
  if (is_symbolic()) return Scalar(p);
  return Scalar(p.eval(*q0_));
}

std::optional<Scalar> QMode::try_div(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (b.is_zero()) throw std::invalid_argument("division by zero");
  if (is_symbolic()) {
    auto q = try_exact_div(a.poly(), b.poly());
    if (!q) return std::nullopt;
    return Scalar(*std::move(q));
  }
  BigInt quo;
  BigInt rem;
  boost::multiprecision::divide_qr(a.integer(), b.integer(), quo, rem);
  if (rem != 0) return std::nullopt;
  return Scalar(quo);
}

Scalar QMode::div(const Scalar& a, const Scalar& b) const {
  auto q = try_div(a, b);
  if (!q) throw NotDivisible("not divisible: " + a.str() + " / " + b.str());
  return *std::move(q);
}

Scalar QMode::choose(const Scalar& a, std::int64_t l) const {
  check(a);
  if (is_symbolic()) throw std::logic_error("binomial of a polynomial is not a polynomial");
  return Scalar(binomial(a.integer(), l));
}

void QMode::check(const Scalar& s) const {
  if (s.is_symbolic() != is_symbolic()) mixed();
}

}  // namespace qdesign
