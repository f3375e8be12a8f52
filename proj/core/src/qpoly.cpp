#include "qdesign/qpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qdesign/errors.hpp"

namespace qdesign {

BigInt binomial(const BigInt& n, std::int64_t k) {
  if (k < 0 || n < 0 || BigInt(k) > n) return BigInt(0);
  BigInt result = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp > 0) b *= b;
  }
  return result;
}

// ---------------------------------------------------------------------------
// QPolynomial

QPolynomial::QPolynomial(int c) : coeffs_{BigInt(c)} { trim(); }

QPolynomial::QPolynomial(const BigInt& c) : coeffs_{c} { trim(); }

QPolynomial::QPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPolynomial::QPolynomial(std::initializer_list<int> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (int c : coeffs) coeffs_.emplace_back(c);
  trim();
}

QPolynomial QPolynomial::monomial(const BigInt& c, std::size_t power) {
  if (c == 0) return {};
  std::vector<BigInt> coeffs(power + 1);
  coeffs[power] = c;
  return QPolynomial(std::move(coeffs));
}

void QPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt QPolynomial::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : BigInt(0);
}

const BigInt& QPolynomial::leading() const {
  if (coeffs_.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

std::size_t QPolynomial::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c != 0; }));
}

std::size_t QPolynomial::low_power() const noexcept {
  std::size_t a = 0;
  while (a < coeffs_.size() && coeffs_[a] == 0) ++a;
  return a == coeffs_.size() ? 0 : a;
}

BigInt QPolynomial::eval(const BigInt& q0) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= q0;
    acc += *it;
  }
  return acc;
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

QPolynomial operator*(const QPolynomial& lhs, const QPolynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<BigInt> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return QPolynomial(std::move(out));
}

QPolynomial& QPolynomial::operator*=(const QPolynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

QPolynomial QPolynomial::shifted(std::size_t power) const {
  if (is_zero() || power == 0) return *this;
  std::vector<BigInt> out(power);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return QPolynomial(std::move(out));
}

QPolynomial pow(const QPolynomial& base, std::uint64_t exp) {
  QPolynomial result(1);
  QPolynomial b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp > 0) b *= b;
  }
  return result;
}

std::optional<QPolynomial> try_exact_div(const QPolynomial& p, const QPolynomial& r) {
  if (r.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (p.is_zero()) return QPolynomial();
  if (p.degree() < r.degree()) return std::nullopt;

  std::vector<BigInt> rem = p.coeffs();
  const auto& div = r.coeffs();
  const std::size_t dr = div.size() - 1;
  std::vector<BigInt> quot(rem.size() - dr);
  const BigInt& lead = div.back();

  // Long division; an inexact leading-coefficient quotient means the Q[q]
  // quotient has a non-integer coefficient, so r does not divide p in Z[q].
  for (std::size_t k = quot.size(); k-- > 0;) {
    BigInt& top = rem[k + dr];
    if (top == 0) continue;
    BigInt c;
    BigInt m;
    boost::multiprecision::divide_qr(top, lead, c, m);
    if (m != 0) return std::nullopt;
    quot[k] = c;
    for (std::size_t j = 0; j <= dr; ++j) rem[k + j] -= c * div[j];
  }
  for (const auto& c : rem) {
    if (c != 0) return std::nullopt;
  }
  return QPolynomial(std::move(quot));
}

QPolynomial exact_div(const QPolynomial& p, const QPolynomial& r) {
  auto q = try_exact_div(p, r);
  if (!q) {
    throw NotDivisible("not divisible: (" + render_expanded(p) + ") / (" + render_expanded(r) + ")");
  }
  return *std::move(q);
}

// ---------------------------------------------------------------------------
// q-combinatorics

QPolynomial q_integer(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("q_integer: n must be non-negative");
  return QPolynomial(std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(1)));
}

QPolynomial q_factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("q_factorial: n must be non-negative");
  QPolynomial result(1);
  for (std::int64_t i = 2; i <= n; ++i) result *= q_integer(i);
  return result;
}

QPolynomial gauss_poly(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("gauss_poly: n must be non-negative");
  if (k < 0 || k > n) return {};
  k = std::min(k, n - k);
  // [n]! / [n-k]! = [n-k+1] ... [n], then divide by [k]!.
  QPolynomial numerator(1);
  for (std::int64_t i = n - k + 1; i <= n; ++i) numerator *= q_integer(i);
  auto quotient = try_exact_div(numerator, q_factorial(k));
  if (!quotient) throw InvariantViolation("gauss_poly: inexact division");
  return *std::move(quotient);
}

namespace {

QPolynomial cyclotomic_memo(std::int64_t d, std::unordered_map<std::int64_t, QPolynomial>& memo) {
  if (auto it = memo.find(d); it != memo.end()) return it->second;
  // q^d - 1 divided by Phi_e for every proper divisor e of d
  QPolynomial result = QPolynomial::q_power(static_cast<std::size_t>(d)) - QPolynomial(1);
  for (std::int64_t e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto q = try_exact_div(result, cyclotomic_memo(e, memo));
    if (!q) throw InvariantViolation("cyclotomic: inexact division");
    result = *std::move(q);
  }
  memo.emplace(d, result);
  return result;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

QPolynomial cyclotomic(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("cyclotomic: d must be positive");
  std::unordered_map<std::int64_t, QPolynomial> memo;
  return cyclotomic_memo(d, memo);
}

QPolynomial FactoredForm::expand() const {
  QPolynomial result = cofactor.shifted(q_power);
  for (const auto& [d, mult] : cyclotomic) result *= pow(qdesign::cyclotomic(d), mult);
  return result;
}

FactoredForm factor_cyclotomic(const QPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot factor zero");
  FactoredForm out;
  out.q_power = p.low_power();
  QPolynomial rest(std::vector<BigInt>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(out.q_power),
                                       p.coeffs().end()));

  // deg Phi_d = phi(d) >= sqrt(d/2), so d <= 2*deg^2 covers every candidate.
  std::unordered_map<std::int64_t, QPolynomial> memo;
  const std::int64_t deg0 = rest.degree();
  const std::int64_t bound = 2 * deg0 * deg0 + 2;
  for (std::int64_t d = 1; d <= bound && rest.degree() > 0; ++d) {
    if (euler_phi(d) > rest.degree()) continue;
    const QPolynomial phi = cyclotomic_memo(d, memo);
    while (rest.degree() >= phi.degree()) {
      auto q = try_exact_div(rest, phi);
      if (!q) break;
      rest = *std::move(q);
      ++out.cyclotomic[d];
    }
  }
  out.cofactor = std::move(rest);
  return out;
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string power_text(std::size_t e) { return e == 1 ? "q" : "q^" + std::to_string(e); }

}  // namespace

std::string render_expanded(const QPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  bool first = true;
  for (std::size_t e = c.size(); e-- > 0;) {
    if (c[e] == 0) continue;
    const bool negative = c[e] < 0;
    const BigInt mag = negative ? BigInt(-c[e]) : c[e];
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + "*";
      out += power_text(e);
    }
  }
  return out;
}

std::string render_factored(const FactoredForm& f) {
  std::vector<std::string> parts;
  std::string sign;
  QPolynomial cof = f.cofactor;
  if (!cof.is_zero() && cof.leading() < 0) {
    sign = "-";
    cof = -cof;
  }
  if (cof.is_constant() && !cof.is_one()) parts.push_back(render_expanded(cof));
  if (f.q_power > 0) parts.push_back(power_text(f.q_power));
  const bool bare_cofactor = !cof.is_constant();
  if (bare_cofactor) parts.push_back("(" + render_expanded(cof) + ")");
  for (const auto& [d, mult] : f.cyclotomic) {
    std::string term = "Phi" + std::to_string(d);
    if (mult > 1) term += "^" + std::to_string(mult);
    parts.push_back(term);
  }
  if (parts.empty()) return sign + "1";
  if (parts.size() == 1 && bare_cofactor) return sign + render_expanded(cof);
  std::string out = sign;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += "*";
    out += parts[i];
  }
  return out;
}

std::string render(const QPolynomial& p, PolyStyle style) {
  if (style == PolyStyle::expanded || p.is_zero()) return render_expanded(p);
  return render_factored(factor_cyclotomic(p));
}

std::ostream& operator<<(std::ostream& os, const QPolynomial& p) { return os << render_expanded(p); }

// ---------------------------------------------------------------------------
// parsing

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  QPolynomial parse() {
    QPolynomial result = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("cannot parse polynomial \"" + std::string(text_) + "\" at " +
                                std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  QPolynomial expr() {
    QPolynomial acc;
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    QPolynomial t = term();
    acc = negate ? -t : t;
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  QPolynomial term() {
    QPolynomial acc = factor();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (c == '(' || c == 'q' || c == 'P' || std::isdigit(static_cast<unsigned char>(c))) {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  QPolynomial factor() {
    QPolynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      base = pow(base, static_cast<std::uint64_t>(number()));
    }
    return base;
  }

  std::int64_t number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 18) fail("exponent or index too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  QPolynomial primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      QPolynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'q') {
      ++pos_;
      return QPolynomial::q_power(1);
    }
    if (text_.substr(pos_, 3) == "Phi") {
      pos_ += 3;
      const std::int64_t d = number();
      if (d < 1) fail("Phi index must be positive");
      return cyclotomic(d);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return QPolynomial(BigInt(std::string(text_.substr(start, pos_ - start))));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QPolynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace qdesign
