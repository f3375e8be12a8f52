#pragma once

#include <string>
#include <vector>

#include "qdesign/intersect.hpp"

namespace qdesign {

/// The parameters 2-(7,3,1) in the given mode.
DesignParams fano_params(const QMode& mode);

struct DistributionRow {
  int s = 0;
  std::string type_label;  // "7", ..., "4_1", "4_0", "3_1", "3_0", ..., "0"
  Scalar count;
  IntersectionVector vector;
};

/// Ten rows, descending in s; on the split levels the type containing a
/// block comes first.
std::vector<DistributionRow> fano_distribution(const QMode& mode);

struct StructureEdge {
  std::size_t upper = 0;  // node indices
  std::size_t lower = 0;
  Scalar down_mult;       // lower-type spaces inside one upper space
  Scalar up_mult;         // upper-type spaces through one lower space
};

struct StructureGraph {
  QMode mode;
  /// Ordered by (s, type_label) ascending.
  std::vector<DistributionRow> nodes;
  std::vector<StructureEdge> edges;

  /// count(upper) * down == count(lower) * up on every edge.
  bool double_counting_holds() const;
  std::string to_dot(PolyStyle style = PolyStyle::factored) const;
};

/// Throws InvariantViolation if an edge breaks double counting.
StructureGraph fano_structure_graph(const QMode& mode);

struct CountingStep {
  std::string description;
  Scalar value;
  /// Identity against the distribution rows that the step was tested with.
  std::string check;
};

struct FanoDerived {
  std::vector<CountingStep> steps;
  DesignParams derived;
  /// Design formed by the type-4_1 spaces after dualization.
  DesignParams complement;
};

/// 2-(7,3,q^4) from the 4-spaces without a block. Every step is verified
/// against fano_distribution; a mismatch throws InvariantViolation.
FanoDerived fano_derived_design(const QMode& mode);

}  // namespace qdesign
