#include "qdesign/intersect.hpp"

#include <sstream>
#include <stdexcept>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

std::uint64_t choose2(std::int64_t n) { return n < 2 ? 0 : static_cast<std::uint64_t>(n * (n - 1) / 2); }

Scalar signed_q_pow(const QMode& m, std::int64_t sign_exp, std::int64_t n) {
  Scalar out = m.q_pow(choose2(n));
  return (sign_exp % 2 == 0) ? out : -out;
}

void require_dimension(const DesignParams& p, int s) {
  if (s < 0 || s > p.v) {
    throw std::invalid_argument("subspace dimension s=" + std::to_string(s) + " outside 0.." +
                                std::to_string(p.v));
  }
}

bool forced_zero(const DesignParams& p, int s, int i) { return i > s || p.k - i > p.v - s; }

}  // namespace

// ---------------------------------------------------------------------------

Scalar IntersectionVector::sum() const {
  if (alphas.empty()) throw std::logic_error("empty intersection vector");
  Scalar acc = alphas.front();
  for (std::size_t i = 1; i < alphas.size(); ++i) acc += alphas[i];
  return acc;
}

std::string IntersectionVector::str(PolyStyle style) const {
  std::string out = "(";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0) out += ", ";
    out += alphas[i].str(style);
  }
  return out + ")";
}

std::optional<int> MendelsohnSystem::first_violation(const IntersectionVector& alpha) const {
  if (alpha.alphas.size() != static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("intersection vector has length " + std::to_string(alpha.alphas.size()) +
                                ", expected " + std::to_string(k + 1));
  }
  for (int i = 0; i <= t; ++i) {
    const auto& row = matrix[static_cast<std::size_t>(i)];
    Scalar lhs = row[0] * alpha.alphas[0];
    for (int j = 1; j <= k; ++j) lhs += row[static_cast<std::size_t>(j)] * alpha.alphas[static_cast<std::size_t>(j)];
    if (!(lhs == rhs[static_cast<std::size_t>(i)])) return i;
  }
  return std::nullopt;
}

MendelsohnSystem mendelsohn_system(const DesignParams& p, int s, int order) {
  require_dimension(p, s);
  if (order < 1) throw std::invalid_argument("order must be positive");
  if (order > 1 && p.mode.is_symbolic()) throw std::invalid_argument("high-order systems require numeric mode");
  const QMode& m = p.mode;
  const auto lam = lambdas(p);
  MendelsohnSystem sys;
  sys.s = s;
  sys.t = p.t;
  sys.k = p.k;
  sys.order = order;
  for (int i = 0; i <= p.t; ++i) {
    std::vector<Scalar> row;
    row.reserve(static_cast<std::size_t>(p.k) + 1);
    for (int j = 0; j <= p.k; ++j) row.push_back(m.gauss(j, i));
    sys.matrix.push_back(std::move(row));
    const Scalar& li = lam[static_cast<std::size_t>(i)];
    sys.rhs.push_back(m.gauss(s, i) * (order == 1 ? li : m.choose(li, order)));
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Koehler forms

const Scalar& KoehlerForm::coeff(int i, int j) const {
  if (i < 0 || i > t || j <= t || j > k) throw std::out_of_range("koehler coefficient index");
  return coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - t - 1)];
}

Scalar KoehlerForm::value(int i, const std::vector<Scalar>& free) const {
  if (free.size() != static_cast<std::size_t>(k - t)) throw std::invalid_argument("wrong number of free values");
  Scalar acc = constants[static_cast<std::size_t>(i)];
  for (int j = t + 1; j <= k; ++j) acc += coeff(i, j) * free[static_cast<std::size_t>(j - t - 1)];
  return acc;
}

IntersectionVector KoehlerForm::complete(const std::vector<Scalar>& free) const {
  IntersectionVector out;
  out.s = s;
  for (int i = 0; i <= t; ++i) out.alphas.push_back(value(i, free));
  out.alphas.insert(out.alphas.end(), free.begin(), free.end());
  return out;
}

std::string KoehlerForm::equation(int i, PolyStyle style) const {
  std::string out = "alpha_" + std::to_string(i) + " =";
  const Scalar& c = constants[static_cast<std::size_t>(i)];
  bool first = true;
  if (!c.is_zero()) {
    std::string text = c.str(style);
    const bool compound = c.is_symbolic() && c.poly().term_count() > 1 && style == PolyStyle::expanded;
    out += " " + (compound ? "(" + text + ")" : text);
    first = false;
  }
  for (int j = t + 1; j <= k; ++j) {
    Scalar g = coeff(i, j);
    if (g.is_zero()) continue;
    bool negative = g.is_symbolic() ? g.poly().leading() < 0 : g.sign() < 0;
    if (negative) g = -g;
    std::string term;
    if (!g.is_one()) {
      std::string text = g.str(style);
      const bool compound = g.is_symbolic() && g.poly().term_count() > 1 && style == PolyStyle::expanded;
      term = (compound ? "(" + text + ")" : text) + "*";
    }
    term += "alpha_" + std::to_string(j);
    if (first) {
      out += negative ? " -" + term : " " + term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
    first = false;
  }
  if (first) out += " 0";
  return out;
}

KoehlerForm koehler_forms(const DesignParams& p, int s) {
  require_dimension(p, s);
  const QMode& m = p.mode;
  const auto lam = lambdas(p);
  KoehlerForm form;
  form.s = s;
  form.t = p.t;
  form.k = p.k;
  for (int i = 0; i <= p.t; ++i) {
    Scalar sum = m.zero();
    for (int j = i; j <= p.t; ++j) {
      sum += signed_q_pow(m, j - i, j - i) * m.gauss(s - i, j - i) * lam[static_cast<std::size_t>(j)];
    }
    form.constants.push_back(m.gauss(s, i) * sum);

    std::vector<Scalar> row;
    const Scalar sign_pow = signed_q_pow(m, p.t + 1 - i, p.t + 1 - i);
    for (int j = p.t + 1; j <= p.k; ++j) row.push_back(sign_pow * m.gauss(j, i) * m.gauss(j - i - 1, p.t - i));
    form.coeffs.push_back(std::move(row));
  }
  return form;
}

std::vector<std::vector<Scalar>> pascal_matrix(const QMode& mode, int n) {
  std::vector<std::vector<Scalar>> out;
  for (int i = 0; i <= n; ++i) {
    std::vector<Scalar> row;
    for (int j = 0; j <= n; ++j) row.push_back(mode.gauss(j, i));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Scalar>> pascal_inverse(const QMode& mode, int n) {
  std::vector<std::vector<Scalar>> out;
  for (int i = 0; i <= n; ++i) {
    std::vector<Scalar> row;
    for (int j = 0; j <= n; ++j) {
      row.push_back(j < i ? mode.zero() : signed_q_pow(mode, j - i, j - i) * mode.gauss(j, i));
    }
    out.push_back(std::move(row));
  }
  return out;
}

KoehlerForm koehler_forms_via_inverse(const DesignParams& p, int s) {
  const MendelsohnSystem sys = mendelsohn_system(p, s, 1);
  const QMode& m = p.mode;
  const auto inv = pascal_inverse(m, p.t);
  KoehlerForm form;
  form.s = s;
  form.t = p.t;
  form.k = p.k;
  for (int i = 0; i <= p.t; ++i) {
    const auto& inv_row = inv[static_cast<std::size_t>(i)];
    Scalar c = m.zero();
    for (int nu = 0; nu <= p.t; ++nu) c += inv_row[static_cast<std::size_t>(nu)] * sys.rhs[static_cast<std::size_t>(nu)];
    form.constants.push_back(std::move(c));
    std::vector<Scalar> row;
    for (int j = p.t + 1; j <= p.k; ++j) {
      Scalar g = m.zero();
      for (int nu = 0; nu <= p.t; ++nu) {
        g += inv_row[static_cast<std::size_t>(nu)] * sys.matrix[static_cast<std::size_t>(nu)][static_cast<std::size_t>(j)];
      }
      row.push_back(-g);
    }
    form.coeffs.push_back(std::move(row));
  }
  return form;
}

// ---------------------------------------------------------------------------

IntersectionVector unique_vector(const DesignParams& p, int s, int order) {
  require_dimension(p, s);
  if (order < 1) throw std::invalid_argument("order must be positive");
  const QMode& m = p.mode;
  IntersectionVector out;
  out.s = s;
  out.order = order;
  if (order == 1) {
    if (!(s <= p.t || s >= p.v - p.t)) {
      throw std::domain_error("dimension not in unique range: s=" + std::to_string(s) + " for " + p.str());
    }
    lambdas(p);
    const Scalar denom = m.gauss(p.v - p.t, p.k - p.t);
    for (int i = 0; i <= p.k; ++i) {
      if (forced_zero(p, s, i)) {
        out.alphas.push_back(m.zero());
        continue;
      }
      const auto e = static_cast<std::uint64_t>(s - i) * static_cast<std::uint64_t>(p.k - i);
      out.alphas.push_back(m.div(m.q_pow(e) * m.gauss(s, i) * m.gauss(p.v - s, p.k - i) * p.lambda, denom));
    }
    return out;
  }
  if (s > p.t) {
    throw std::domain_error("dimension not in unique range: high-order vectors are only determined for s <= t");
  }
  const LambdaIJTable table = lambda_ij(p, order);
  for (int i = 0; i <= p.k; ++i) {
    out.alphas.push_back(i <= s ? m.gauss(s, i) * table.at(i, s - i) : m.zero());
  }
  return out;
}

// ---------------------------------------------------------------------------
// feasibility enumeration

namespace {

class FeasibleSearch {
 public:
  FeasibleSearch(const DesignParams& p, const KoehlerForm& form, std::vector<BigInt> lower,
                 std::vector<BigInt> upper, BigInt budget, std::uint64_t node_budget, const std::vector<bool>& zero_rows)
      : form_(form),
        free_count_(static_cast<std::size_t>(p.k - p.t)),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        budget_(std::move(budget)),
        node_budget_(node_budget),
        zero_rows_(zero_rows) {
    const std::size_t rows = static_cast<std::size_t>(p.t) + 1;
    for (std::size_t i = 0; i < rows; ++i) {
      constants_.push_back(form.constants[i].integer());
      std::vector<BigInt> g;
      for (std::size_t j = 0; j < free_count_; ++j) g.push_back(form.coeffs[i][j].integer());
      coeffs_.push_back(std::move(g));
      // every coefficient of a row shares the sign (-1)^{t+1-i}
      nonincreasing_.push_back((p.t + 1 - static_cast<int>(i)) % 2 == 1);
    }
  }

  std::vector<IntersectionVector> run() {
    std::vector<BigInt> partial = constants_;
    std::vector<BigInt> assignment(free_count_);
    descend(0, partial, assignment, 0);
    return std::move(found_);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void descend(std::size_t idx, std::vector<BigInt>& partial, std::vector<BigInt>& assignment, const BigInt& spent) {
    if (idx == free_count_) {
      accept(partial, assignment);
      return;
    }
    BigInt hi = upper_[idx];
    if (budget_ - spent < hi) hi = budget_ - spent;
    for (BigInt x = lower_[idx]; x <= hi; ++x) {
      if (++nodes_ > node_budget_) {
        throw GuardExceeded("feasibility enumeration exceeded the node budget of " + std::to_string(node_budget_));
      }
      bool dead = false;
      std::vector<BigInt> next = partial;
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] += coeffs_[i][idx] * x;
        // rows whose remaining coefficients are all <= 0 can only decrease
        if (nonincreasing_[i] && next[i] < 0) dead = true;
      }
      if (dead) break;  // larger x only makes these rows smaller
      assignment[idx] = x;
      descend(idx + 1, next, assignment, spent + x);
    }
    assignment[idx] = 0;
  }

  void accept(const std::vector<BigInt>& values, const std::vector<BigInt>& assignment) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 0) return;
      if (zero_rows_[i] && values[i] != 0) return;
    }
    IntersectionVector vec;
    vec.s = form_.s;
    for (const auto& v : values) vec.alphas.emplace_back(v);
    for (const auto& v : assignment) vec.alphas.emplace_back(v);
    found_.push_back(std::move(vec));
  }

  const KoehlerForm& form_;
  std::size_t free_count_;
  std::vector<BigInt> constants_;
  std::vector<std::vector<BigInt>> coeffs_;
  std::vector<bool> nonincreasing_;
  std::vector<BigInt> lower_;
  std::vector<BigInt> upper_;
  BigInt budget_;
  std::uint64_t node_budget_;
  std::vector<bool> zero_rows_;
  std::uint64_t nodes_ = 0;
  std::vector<IntersectionVector> found_;
};

}  // namespace

FeasibleSet enumerate_feasible(const DesignParams& p, int s, const EnumerateOptions& options) {
  require_dimension(p, s);
  if (p.mode.is_symbolic()) throw std::invalid_argument("enumerate_feasible requires numeric mode");
  if (options.s_is_block && s != p.k) throw std::invalid_argument("S can only be a block when s = k");
  const QMode& m = p.mode;
  const auto lam = lambdas(p);
  const KoehlerForm form = koehler_forms(p, s);
  const BigInt& lambda0 = lam[0].integer();

  FeasibleSet result;
  auto& cons = result.constraints;
  cons.push_back("koehler: alpha_0..alpha_" + std::to_string(p.t) + " nonnegative integers");
  const std::string free_sum = p.t + 1 == p.k ? "alpha_" + std::to_string(p.k)
                                               : "alpha_" + std::to_string(p.t + 1) + " + ... + alpha_" + std::to_string(p.k);
  cons.push_back("budget: " + free_sum + " <= lambda_0 = " + lambda0.str());
  cons.push_back("dimension: alpha_i = 0 for i > s or k - i > v - s");

  const std::size_t free_count = static_cast<std::size_t>(p.k - p.t);
  std::vector<BigInt> lower(free_count, BigInt(0));
  std::vector<BigInt> upper(free_count, lambda0);
  for (int j = p.t + 1; j <= p.k; ++j) {
    if (forced_zero(p, s, j)) upper[static_cast<std::size_t>(j - p.t - 1)] = 0;
  }
  if (free_count > 0) {
    BigInt& top = upper.back();
    if (s >= p.k) {
      const BigInt contain = (p.lambda * m.gauss(s, p.t)).integer() / m.gauss(p.k, p.t).integer();
      if (contain < top) top = contain;
      cons.push_back("containment: alpha_k <= floor(lambda [s,t] / [k,t]) = " + contain.str());
    }
    if (p.lambda.is_one() && 2 * p.k - s >= p.t && s >= p.k) {
      if (top > 1) top = 1;
      cons.push_back("steiner: alpha_k <= 1 (two blocks inside S would share a t-space)");
    }
    if (s == p.k) {
      if (top > 1) top = 1;
      cons.push_back("distinct: alpha_k <= 1 when s = k");
    }
    if (options.s_is_block) {
      lower.back() = 1;
      cons.push_back("block: alpha_k = 1");
    }
  } else if (options.s_is_block) {
    cons.push_back("block: alpha_k = 1 (determined)");
  }

  std::vector<bool> zero_rows;
  for (int i = 0; i <= p.t; ++i) zero_rows.push_back(forced_zero(p, s, i));

  FeasibleSearch search(p, form, std::move(lower), std::move(upper), lambda0, options.node_budget, zero_rows);
  result.vectors = search.run();
  result.nodes = search.nodes();
  if (options.s_is_block && free_count == 0) {
    std::erase_if(result.vectors, [&](const IntersectionVector& v) { return !v.alphas.back().is_one(); });
  }
  return result;
}

// ---------------------------------------------------------------------------
// nonexistence

std::string to_string(CertificateStage stage) {
  switch (stage) {
    case CertificateStage::koehler_negativity:
      return "koehler-negativity";
    case CertificateStage::unique_vector_pigeonhole:
      return "unique-vector-pigeonhole";
    case CertificateStage::no_feasible_vector:
      return "no-feasible-vector";
    case CertificateStage::feasible:
      return "feasible";
  }
  return "?";
}

NonexistenceCertificate nonexistence_check(const DesignParams& p, const EnumerateOptions& options) {
  if (p.mode.is_symbolic()) throw std::invalid_argument("nonexistence_check requires numeric mode");
  NonexistenceCertificate cert{p, CertificateStage::feasible, lambdas(p), {}, {}, {}};

  if (p.k > p.t) {
    const KoehlerForm form = koehler_forms(p, p.k);
    for (int i = 0; i <= p.t; ++i) {
      if ((p.t + 1 - i) % 2 == 0) continue;
      const Scalar& c = form.constants[static_cast<std::size_t>(i)];
      const Scalar& g = form.coeff(i, p.k);
      Scalar bound = c + g;
      if (bound.sign() < 0) {
        cert.stage = CertificateStage::koehler_negativity;
        cert.negativity = NegativityWitness{i, c, g, std::move(bound)};
        return cert;
      }
    }
  }

  EnumerateOptions block = options;
  block.s_is_block = true;
  const FeasibleSet feasible = enumerate_feasible(p, p.k, block);
  if (feasible.vectors.empty()) {
    cert.stage = CertificateStage::no_feasible_vector;
    return cert;
  }
  // The pigeonhole argument places blocks disjoint from a block inside its
  // set complement, which only exists for q = 1.
  if (feasible.vectors.size() != 1 || p.mode.q0() != 1) return cert;
  const IntersectionVector& vec = feasible.vectors.front();
  const int meet = 2 * p.k - (p.v - p.k);
  if (vec.alphas[0].integer() < 2) return cert;
  for (int j = std::max(meet, 0); j < p.k; ++j) {
    if (!vec.alphas[static_cast<std::size_t>(j)].is_zero()) return cert;
  }
  cert.stage = CertificateStage::unique_vector_pigeonhole;
  cert.forced_vector = vec;
  cert.pigeonhole_dimension = meet;
  return cert;
}

bool NonexistenceCertificate::recheck() const {
  const QMode& m = params.mode;
  // lambda_i * [k-i, t-i] = lambda * [v-i, t-i]
  if (lambdas.size() != static_cast<std::size_t>(params.t) + 1) return false;
  for (int i = 0; i <= params.t; ++i) {
    if (!(lambdas[static_cast<std::size_t>(i)] * m.gauss(params.k - i, params.t - i) ==
          params.lambda * m.gauss(params.v - i, params.t - i))) {
      return false;
    }
  }
  switch (stage) {
    case CertificateStage::koehler_negativity: {
      if (!negativity) return false;
      const KoehlerForm form = koehler_forms_via_inverse(params, params.k);
      const int i = negativity->index;
      if ((params.t + 1 - i) % 2 == 0) return false;
      for (int j = params.t + 1; j <= params.k; ++j) {
        if (form.coeff(i, j).sign() > 0) return false;
      }
      return form.constants[static_cast<std::size_t>(i)] == negativity->constant &&
             form.coeff(i, params.k) == negativity->coefficient &&
             negativity->constant + negativity->coefficient == negativity->bound && negativity->bound.sign() < 0;
    }
    case CertificateStage::unique_vector_pigeonhole: {
      if (!forced_vector || !pigeonhole_dimension || m.q0() != 1) return false;
      const auto& a = forced_vector->alphas;
      if (!mendelsohn_system(params, params.k).satisfied_by(*forced_vector)) return false;
      if (!a.back().is_one() || a[0].integer() < 2) return false;
      if (*pigeonhole_dimension != 2 * params.k - (params.v - params.k)) return false;
      for (int j = std::max(*pigeonhole_dimension, 0); j < params.k; ++j) {
        if (!a[static_cast<std::size_t>(j)].is_zero()) return false;
      }
      return true;
    }
    case CertificateStage::no_feasible_vector: {
      EnumerateOptions block;
      block.s_is_block = true;
      return enumerate_feasible(params, params.k, block).vectors.empty();
    }
    case CertificateStage::feasible:
      return true;
  }
  return false;
}

FamilyMember family_member(Family family, int n) {
  FamilyMember out;
  out.n = n;
  if (family == Family::t4) {
    if (n < 5) {
      out.skip_reason = "n < 5";
    } else if (n % 4 == 0) {
      out.skip_reason = "4 | n";
    } else {
      out.params = DesignParams::at(1, 4, n * (n - 1) / 2 + 2, n + 1, 2);
    }
  } else {
    if (n < 2) {
      out.skip_reason = "n < 2";
    } else {
      out.params = DesignParams::at(1, 3, (2 * n - 1) * (4 * n - 1) + 1, 4 * n - 1, 1);
    }
  }
  return out;
}

std::vector<FamilyScanRow> scan_family(Family family, int n_from, int n_to) {
  std::vector<FamilyScanRow> rows;
  for (int n = n_from; n <= n_to; ++n) {
    FamilyScanRow row;
    row.member = family_member(family, n);
    if (row.member.params) {
      row.admissible = lambda_table(*row.member.params).admissible;
      if (row.admissible) row.certificate = nonexistence_check(*row.member.params);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qdesign
