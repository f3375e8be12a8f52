#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdesign/scalar.hpp"

namespace qdesign {

/// Parameter set t-(v,k,lambda)_q. Construction validates 0 <= t <= k <= v
/// and lambda >= 1 (numeric) or lambda != 0 (symbolic).
struct DesignParams {
  DesignParams(QMode mode, int t, int v, int k, Scalar lambda);
  /// Numeric shorthand: DesignParams::at(q0, t, v, k, lambda).
  static DesignParams at(const BigInt& q0, int t, int v, int k, const BigInt& lambda);
  static DesignParams symbolic(int t, int v, int k, const QPolynomial& lambda);

  QMode mode;
  int t;
  int v;
  int k;
  Scalar lambda;

  /// "2-(7,3,1)_q", "2-(7,3,1)_2", "3-(11,5,2)" (q = 1 is printed plain).
  std::string str(PolyStyle style = PolyStyle::expanded) const;
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

struct LambdaTable {
  /// values[i] = lambda_i; nullopt where the division was not exact.
  std::vector<std::optional<Scalar>> values;
  bool admissible = true;
  /// Largest i whose division failed.
  std::optional<int> fail_witness;
};

/// lambda_i = lambda * [v-i, t-i] / [k-i, t-i] for i = 0..t.
LambdaTable lambda_table(const DesignParams& p);

/// The admissible lambda_0..lambda_t; throws NotAdmissible otherwise.
std::vector<Scalar> lambdas(const DesignParams& p);

/// lambda^(l)_{i,j} for i + j <= t, filled by the recurrence
/// lambda_{i,j+1} = lambda_{i,j} - q^j lambda_{i+1,j} from lambda_{i,0} = C(lambda_i, l).
struct LambdaIJTable {
  int order = 1;
  int t = 0;
  /// rows[i][j], j = 0..t-i
  std::vector<std::vector<Scalar>> rows;

  const Scalar& at(int i, int j) const;
};

/// Order l >= 2 requires numeric mode. Throws NotAdmissible.
LambdaIJTable lambda_ij(const DesignParams& p, int order = 1);

/// q^{j(k-i)} [v-i-j, k-i] / [v-t, k-t] * lambda. Throws NotDivisible.
Scalar lambda_ij_closed(const DesignParams& p, int i, int j);

/// t-(v, v-k, lambda [v-t, k] / [v-t, k-t]). Throws NotAdmissible.
DesignParams dual_params(const DesignParams& p);

/// t-(v, k, [v-t, k-t] - lambda). Throws std::domain_error("complement empty")
/// when lambda equals the trivial value (numeric: also when it exceeds it).
DesignParams complement_params(const DesignParams& p);

struct Steiner3Bound {
  bool holds;
  Rational lhs;  // C(v,3)
  Rational rhs;  // (v/k) * (v-1) * C(k,3)
};

/// Necessary condition for a 3-(v,k,1) design: C(v,3) >= (v/k)(v-1)C(k,3).
Steiner3Bound steiner3_bound_check(int v, int k);

/// True iff n = p^e for a prime p and e >= 1. 1 is not a prime power.
bool is_prime_power(const BigInt& n);

}  // namespace qdesign
