#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdesign/intersect.hpp"

namespace qdesign {

/**
 * GF(p^e) with elements 0..q-1; index sum c_i p^i encodes sum c_i x^i.
 * Arithmetic is by table lookup.
 */
class FiniteField {
 public:
  using Elem = std::uint16_t;

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  /// Monic modulus, coefficients c_0..c_e (c_e = 1). {0, 1} for e = 1.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
  Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
  Elem neg(Elem a) const { return neg_[a]; }
  /// Throws std::domain_error for 0.
  Elem inv(Elem a) const;

  /// Smallest multiplicative generator.
  Elem primitive() const;

  /// Builds GF(p^e) with the lexicographically smallest monic irreducible
  /// modulus (coefficients compared from c_0 upward).
  static FiniteField build(int p, int e);

 private:
  std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b; }

  int p_ = 0;
  int e_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

/// Fields for the oracle: q0 a prime power, q0 <= 16.
FiniteField make_field(int q0);
/// Shared cached instance of make_field(q0).
std::shared_ptr<const FiniteField> shared_field(int q0);

/// Configurable limits for the brute-force routines.
struct OracleGuards {
  std::uint64_t max_subspaces = 10'000'000;
  std::uint64_t max_block_tuples = 10'000'000;
};

/// d x v matrix in reduced row echelon form, row-major.
struct SubspaceMatrix {
  int q = 0;
  int v = 0;
  int d = 0;
  std::vector<std::uint8_t> rows;

  std::uint8_t at(int r, int c) const { return rows[static_cast<std::size_t>(r * v + c)]; }
  std::vector<int> pivots() const;
  std::string str() const;  // one hex digit per entry, rows joined by '|'
  friend bool operator==(const SubspaceMatrix&, const SubspaceMatrix&) = default;
  friend auto operator<=>(const SubspaceMatrix&, const SubspaceMatrix&) = default;
};

/// Row-reduces an arbitrary generator matrix (n x v, row-major) to the
/// canonical form of the span.
SubspaceMatrix canonical_span(const FiniteField& f, int v, std::vector<std::uint8_t> generators);

/// Every d-subspace of GF(q0)^v, ordered by pivot set, then by free entries.
/// Throws GuardExceeded when [v, d]_{q0} exceeds the guard.
void for_each_subspace(const FiniteField& f, int v, int d, const std::function<void(const SubspaceMatrix&)>& visit,
                       const OracleGuards& guards = {});
std::vector<SubspaceMatrix> enumerate_subspaces(const FiniteField& f, int v, int d, const OracleGuards& guards = {});

int intersection_dim(const FiniteField& f, const SubspaceMatrix& a, const SubspaceMatrix& b);
SubspaceMatrix subspace_sum(const FiniteField& f, const SubspaceMatrix& a, const SubspaceMatrix& b);
SubspaceMatrix subspace_meet(const FiniteField& f, const SubspaceMatrix& a, const SubspaceMatrix& b);
/// Orthogonal complement for the standard dot product.
SubspaceMatrix orthogonal_complement(const FiniteField& f, const SubspaceMatrix& a);

struct DesignInstance {
  std::shared_ptr<const FiniteField> field;
  int v = 0;
  int k = 0;
  std::vector<SubspaceMatrix> blocks;  // sorted, duplicate-free

  int q() const { return field->q(); }
};

/// Validates dimensions and uniqueness, then sorts the blocks.
DesignInstance make_design(int q0, int v, int k, std::vector<SubspaceMatrix> blocks);

DesignInstance trivial_design(int q0, int v, int k, const OracleGuards& guards = {});

/// Desarguesian spread: the GF(q0^k)-points of GF(q0^k)^{v/k} as
/// k-subspaces of GF(q0)^v. Needs k | v and q0^k <= 16 or q0 prime; the
/// extension field is capped at 1024 elements.
DesignInstance spread_construct(int q0, int v, int k);

/// Blocks are the orthogonal complements of the blocks of d.
DesignInstance dual_design(const DesignInstance& d);

struct VerifyReport {
  bool is_design = false;
  std::optional<std::uint64_t> lambda;
  /// Two t-subspaces with different block counts.
  struct Counterexample {
    SubspaceMatrix first;
    std::uint64_t first_count;
    SubspaceMatrix second;
    std::uint64_t second_count;
  };
  std::optional<Counterexample> counterexample;
};

VerifyReport verify_design(const DesignInstance& d, int t, const OracleGuards& guards = {});

/// Histogram of dim(B cap S) (order 1) or dim(B_1 cap ... cap B_l cap S)
/// over l-subsets of blocks.
IntersectionVector measure_alpha(const DesignInstance& d, const SubspaceMatrix& s, int order = 1,
                                 const OracleGuards& guards = {});

struct LambdaIJOptions {
  int samples = 20;
  std::uint64_t seed = 0;
  /// Every pair (I, J) instead of random samples.
  bool exhaustive = false;
  OracleGuards guards;
};

/// Counts l-subsets whose intersection contains I and meets J trivially, for
/// sampled pairs (I, J) with I cap J = 0. Throws InvariantViolation if two
/// pairs disagree.
std::uint64_t measure_lambda_ij(const DesignInstance& d, int t, int i, int j, int order = 1,
                                const LambdaIJOptions& options = {});

/// Text format: "q v k", '#' comments, one block per line as k*v hex digits.
DesignInstance parse_design(const std::string& text);
std::string format_design(const DesignInstance& d);
DesignInstance load_design(const std::filesystem::path& path);
void save_design(const DesignInstance& d, const std::filesystem::path& path);

}  // namespace qdesign
