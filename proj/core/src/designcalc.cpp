#include "qdesign/designcalc.hpp"

#include <stdexcept>

#include "qdesign/errors.hpp"

namespace qdesign {

DesignParams::DesignParams(QMode mode_, int t_, int v_, int k_, Scalar lambda_)
    : mode(std::move(mode_)), t(t_), v(v_), k(k_), lambda(std::move(lambda_)) {
  if (t < 0 || t > k || k > v) {
    throw std::invalid_argument("parameters must satisfy 0 <= t <= k <= v (got t=" + std::to_string(t) +
                                ", v=" + std::to_string(v) + ", k=" + std::to_string(k) + ")");
  }
  mode.check(lambda);
  if (mode.is_numeric() ? lambda.sign() < 1 : lambda.is_zero()) {
    throw std::invalid_argument("lambda must be positive (numeric) or nonzero (symbolic)");
  }
}

DesignParams DesignParams::at(const BigInt& q0, int t, int v, int k, const BigInt& lambda) {
  return {QMode::numeric(q0), t, v, k, Scalar(lambda)};
}

DesignParams DesignParams::symbolic(int t, int v, int k, const QPolynomial& lambda) {
  return {QMode::symbolic(), t, v, k, Scalar(lambda)};
}

std::string DesignParams::str(PolyStyle style) const {
  std::string out = std::to_string(t) + "-(" + std::to_string(v) + "," + std::to_string(k) + "," +
                    lambda.str(style) + ")";
  if (mode.is_symbolic()) return out + "_q";
  if (mode.q0() == 1) return out;
  return out + "_" + mode.q0().str();
}

LambdaTable lambda_table(const DesignParams& p) {
  const QMode& m = p.mode;
  LambdaTable table;
  table.values.resize(static_cast<std::size_t>(p.t) + 1);
  for (int i = p.t; i >= 0; --i) {
    auto value = m.try_div(p.lambda * m.gauss(p.v - i, p.t - i), m.gauss(p.k - i, p.t - i));
    if (!value) {
      table.admissible = false;
      if (!table.fail_witness) table.fail_witness = i;
    }
    table.values[static_cast<std::size_t>(i)] = std::move(value);
  }
  return table;
}

std::vector<Scalar> lambdas(const DesignParams& p) {
  LambdaTable table = lambda_table(p);
  if (!table.admissible) {
    throw NotAdmissible(p.str() + " is not admissible (lambda_" + std::to_string(*table.fail_witness) +
                        " is not integral)");
  }
  std::vector<Scalar> out;
  out.reserve(table.values.size());
  for (auto& v : table.values) out.push_back(*std::move(v));
  return out;
}

const Scalar& LambdaIJTable::at(int i, int j) const {
  if (i < 0 || j < 0 || i + j > t) {
    throw std::out_of_range("lambda_ij index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside i + j <= t");
  }
  return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

LambdaIJTable lambda_ij(const DesignParams& p, int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  if (order > 1 && p.mode.is_symbolic()) {
    throw std::invalid_argument("high-order lambda_ij requires numeric mode");
  }
  const QMode& m = p.mode;
  const auto lam = lambdas(p);
  LambdaIJTable table;
  table.order = order;
  table.t = p.t;
  table.rows.resize(static_cast<std::size_t>(p.t) + 1);
  for (int i = 0; i <= p.t; ++i) {
    const Scalar& li = lam[static_cast<std::size_t>(i)];
    table.rows[static_cast<std::size_t>(i)].push_back(order == 1 ? li : m.choose(li, order));
  }
  // column j+1 only needs column j of rows i and i+1
  for (int j = 0; j < p.t; ++j) {
    for (int i = 0; i + j + 1 <= p.t; ++i) {
      auto& row = table.rows[static_cast<std::size_t>(i)];
      const auto& below = table.rows[static_cast<std::size_t>(i) + 1];
      row.push_back(row[static_cast<std::size_t>(j)] -
                    m.q_pow(static_cast<std::uint64_t>(j)) * below[static_cast<std::size_t>(j)]);
    }
  }
  return table;
}

Scalar lambda_ij_closed(const DesignParams& p, int i, int j) {
  if (i < 0 || j < 0 || i + j > p.t) throw std::invalid_argument("lambda_ij_closed requires i + j <= t");
  const QMode& m = p.mode;
  const auto e = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(p.k - i);
  return m.div(m.q_pow(e) * m.gauss(p.v - i - j, p.k - i) * p.lambda, m.gauss(p.v - p.t, p.k - p.t));
}

DesignParams dual_params(const DesignParams& p) {
  lambdas(p);
  const QMode& m = p.mode;
  auto lam = m.try_div(p.lambda * m.gauss(p.v - p.t, p.k), m.gauss(p.v - p.t, p.k - p.t));
  if (!lam) throw InvariantViolation("dual lambda of admissible " + p.str() + " is not integral");
  if (p.v - p.k < p.t) {
    throw std::domain_error("dual of " + p.str() + " has block dimension below t");
  }
  return {m, p.t, p.v, p.v - p.k, *std::move(lam)};
}

DesignParams complement_params(const DesignParams& p) {
  const QMode& m = p.mode;
  Scalar lam = m.gauss(p.v - p.t, p.k - p.t) - p.lambda;
  if (lam.is_zero()) throw std::domain_error("complement empty: " + p.str() + " is the trivial design");
  if (m.is_numeric() && lam.sign() < 0) {
    throw std::domain_error("lambda of " + p.str() + " exceeds the trivial value");
  }
  return {m, p.t, p.v, p.k, std::move(lam)};
}

Steiner3Bound steiner3_bound_check(int v, int k) {
  if (k < 3 || k >= v) throw std::invalid_argument("steiner3 bound needs 3 <= k < v");
  Rational lhs(binomial(v, 3));
  Rational rhs = Rational(BigInt(v), BigInt(k)) * Rational(v - 1) * Rational(binomial(k, 3));
  return {lhs >= rhs, lhs, rhs};
}

bool is_prime_power(const BigInt& n) {
  if (n < 2) return false;
  BigInt m = n;
  for (BigInt p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    return m == 1;
  }
  return true;  // n itself is prime
}

}  // namespace qdesign
