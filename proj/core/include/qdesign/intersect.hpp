#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdesign/designcalc.hpp"

namespace qdesign {

/// (alpha_0, ..., alpha_k) of a subspace S of dimension s; order l > 1 for
/// high-order intersection numbers over l-subsets of blocks.
struct IntersectionVector {
  int s = 0;
  int order = 1;
  std::vector<Scalar> alphas;

  Scalar sum() const;
  std::string str(PolyStyle style = PolyStyle::expanded) const;
  friend bool operator==(const IntersectionVector&, const IntersectionVector&) = default;
};

/// Rows i = 0..t: sum_j [j, i] alpha_j = rhs_i, columns j = 0..k, with
/// rhs_i = [s, i] lambda_i for order 1 and [s, i] C(lambda_i, l) for order l.
struct MendelsohnSystem {
  int s = 0;
  int t = 0;
  int k = 0;
  int order = 1;
  std::vector<std::vector<Scalar>> matrix;
  std::vector<Scalar> rhs;

  /// Index of the first violated row, or nullopt if every row holds.
  std::optional<int> first_violation(const IntersectionVector& alpha) const;
  bool satisfied_by(const IntersectionVector& alpha) const { return !first_violation(alpha); }
};

MendelsohnSystem mendelsohn_system(const DesignParams& p, int s, int order = 1);

/**
 * Affine parametrization alpha_i = c_i + sum_j g_{i,j} alpha_j of the
 * determined numbers i = 0..t by the free numbers j = t+1..k.
 */
struct KoehlerForm {
  int s = 0;
  int t = 0;
  int k = 0;
  std::vector<Scalar> constants;            // c_0..c_t
  std::vector<std::vector<Scalar>> coeffs;  // coeffs[i][j - t - 1]

  const Scalar& coeff(int i, int j) const;
  /// alpha_i for the given free values alpha_{t+1}..alpha_k.
  Scalar value(int i, const std::vector<Scalar>& free) const;
  /// Completes the free values to a full vector alpha_0..alpha_k.
  IntersectionVector complete(const std::vector<Scalar>& free) const;
  /// "alpha_0 = (q^8 - q^7 + q^3) - q^3*alpha_3"
  std::string equation(int i, PolyStyle style = PolyStyle::expanded) const;
  friend bool operator==(const KoehlerForm&, const KoehlerForm&) = default;
};

/// Closed-form coefficients.
KoehlerForm koehler_forms(const DesignParams& p, int s);
/// The same form obtained by multiplying the Mendelsohn system with the
/// explicit inverse q-Pascal matrix.
KoehlerForm koehler_forms_via_inverse(const DesignParams& p, int s);

/// ([j, i])_{i,j = 0..n} and its inverse ((-1)^{j-i} q^{C(j-i,2)} [j, i]).
std::vector<std::vector<Scalar>> pascal_matrix(const QMode& mode, int n);
std::vector<std::vector<Scalar>> pascal_inverse(const QMode& mode, int n);

/// The intersection vector forced for s <= t or s >= v - t (order 1), or
/// s <= t (order > 1, numeric). Throws std::domain_error otherwise.
IntersectionVector unique_vector(const DesignParams& p, int s, int order = 1);

struct EnumerateOptions {
  /// Maximal number of search nodes (partial assignments) visited.
  std::uint64_t node_budget = 100'000'000;
  /// S is itself a block: requires s == k and fixes alpha_k = 1.
  bool s_is_block = false;
};

struct FeasibleSet {
  std::vector<IntersectionVector> vectors;
  /// Human-readable list of the constraints that were applied.
  std::vector<std::string> constraints;
  std::uint64_t nodes = 0;
};

/**
 * All nonnegative integer intersection vectors of an s-space permitted by
 * the Koehler equations, the row-0 budget, the containment bound and (for
 * lambda = 1) the Steiner bound. Ordered lexicographically by
 * (alpha_{t+1}, ..., alpha_k). Numeric mode only.
 */
FeasibleSet enumerate_feasible(const DesignParams& p, int s, const EnumerateOptions& options = {});

/// feasible means no verdict. no_feasible_vector: the enumeration for a
/// block S found nothing.
enum class CertificateStage { koehler_negativity, unique_vector_pigeonhole, no_feasible_vector, feasible };

std::string to_string(CertificateStage stage);

/// Upper bound alpha_i <= c_i + g_{i,k} for a block S (alpha_k >= 1, every
/// other free coefficient of row i nonpositive).
struct NegativityWitness {
  int index = 0;
  Scalar constant;
  Scalar coefficient;
  Scalar bound;
};

struct NonexistenceCertificate {
  DesignParams params;
  CertificateStage stage;
  std::vector<Scalar> lambdas;
  std::optional<NegativityWitness> negativity;
  std::optional<IntersectionVector> forced_vector;
  /// Two blocks disjoint from a block meet in at least this dimension.
  std::optional<int> pigeonhole_dimension;

  bool realizable_excluded() const { return stage != CertificateStage::feasible; }
  /// Re-derives every arithmetic claim from scratch; true iff consistent.
  bool recheck() const;
};

/**
 * Admissible-but-not-realizable test for numeric parameters:
 * Koehler negativity on a block, then enumeration for a block (empty
 * result, or a unique vector contradicted by pigeonhole at q = 1), else
 * "feasible". Throws NotAdmissible.
 */
NonexistenceCertificate nonexistence_check(const DesignParams& p, const EnumerateOptions& options = {});

enum class Family { t4, t3 };

/// t4: 4-(C(n,2)+2, n+1, 2) for n >= 5, 4 !| n.
/// t3: 3-((2n-1)(4n-1)+1, 4n-1, 1) for n >= 2.
/// nullopt with a reason when n is not eligible.
struct FamilyMember {
  int n = 0;
  std::optional<DesignParams> params;
  std::string skip_reason;
};

FamilyMember family_member(Family family, int n);

struct FamilyScanRow {
  FamilyMember member;
  bool admissible = false;
  std::optional<NonexistenceCertificate> certificate;
};

std::vector<FamilyScanRow> scan_family(Family family, int n_from, int n_to);

}  // namespace qdesign
