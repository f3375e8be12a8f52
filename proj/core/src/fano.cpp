#include "qdesign/fano.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

constexpr int kV = 7;
constexpr int kK = 3;

std::string level_label(int s, int alpha_k) { return std::to_string(s) + "_" + std::to_string(alpha_k); }

// The two vectors of a split level, alpha_3 = 1 first.
std::vector<IntersectionVector> split_vectors(const DesignParams& p, int s) {
  const QMode& m = p.mode;
  std::vector<IntersectionVector> out;
  if (m.is_symbolic()) {
    const KoehlerForm form = koehler_forms(p, s);
    out.push_back(form.complete({m.one()}));
    out.push_back(form.complete({m.zero()}));
  } else {
    out = enumerate_feasible(p, s).vectors;
    std::reverse(out.begin(), out.end());
  }
  if (out.size() != 2 || !out[0].alphas.back().is_one() || !out[1].alphas.back().is_zero()) {
    throw InvariantViolation("level s=" + std::to_string(s) + " does not split into alpha_3 in {0,1}");
  }
  return out;
}

const DistributionRow& row(const std::vector<DistributionRow>& rows, const std::string& label) {
  for (const auto& r : rows) {
    if (r.type_label == label) return r;
  }
  throw std::logic_error("no distribution row " + label);
}

}  // namespace

DesignParams fano_params(const QMode& mode) { return {mode, 2, kV, kK, mode.one()}; }

std::vector<DistributionRow> fano_distribution(const QMode& mode) {
  const DesignParams p = fano_params(mode);
  const QMode& m = mode;
  const Scalar lambda0 = lambdas(p).front();
  std::vector<DistributionRow> rows;
  for (int s = kV; s >= 0; --s) {
    if (s == 3 || s == 4) {
      auto vectors = split_vectors(p, s);
      // flags (B, S) with B <= S: each block lies in [v-k, s-k] spaces S
      Scalar a1 = lambda0 * m.gauss(kV - kK, s - kK);
      Scalar a0 = m.gauss(kV, s) - a1;
      rows.push_back({s, level_label(s, 1), std::move(a1), std::move(vectors[0])});
      rows.push_back({s, level_label(s, 0), std::move(a0), std::move(vectors[1])});
    } else {
      rows.push_back({s, std::to_string(s), m.gauss(kV, s), unique_vector(p, s)});
    }
  }
  return rows;
}

bool StructureGraph::double_counting_holds() const {
  return std::all_of(edges.begin(), edges.end(), [&](const StructureEdge& e) {
    return nodes[e.upper].count * e.down_mult == nodes[e.lower].count * e.up_mult;
  });
}

std::string StructureGraph::to_dot(PolyStyle style) const {
  std::ostringstream out;
  out << "graph fano_structure {\n";
  out << "  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    out << "  n" << i << " [label=\"" << n.vector.str(style) << "^" << n.count.str(style) << "\"];  // " << n.type_label
        << "\n";
  }
  for (const auto& e : edges) {
    out << "  n" << e.lower << " -- n" << e.upper << " [label=\"" << e.up_mult.str(style) << "/"
        << e.down_mult.str(style) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

StructureGraph fano_structure_graph(const QMode& mode) {
  const QMode& m = mode;
  std::vector<DistributionRow> nodes = fano_distribution(mode);
  std::sort(nodes.begin(), nodes.end(), [](const DistributionRow& a, const DistributionRow& b) {
    return std::tie(a.s, a.type_label) < std::tie(b.s, b.type_label);
  });
  auto index = [&](const std::string& label) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].type_label == label) return i;
    }
    throw std::logic_error("no node " + label);
  };

  StructureGraph g{mode, nodes, {}};
  auto edge = [&](const std::string& upper, const std::string& lower, Scalar down, Scalar up) {
    g.edges.push_back({index(upper), index(lower), std::move(down), std::move(up)});
  };
  auto plain = [&](int s) { edge(std::to_string(s + 1), std::to_string(s), m.gauss(s + 1, s), m.gauss(kV - s, 1)); };

  const Scalar alpha2_30 = nodes[index("3_0")].vector.alphas[2];
  const Scalar lambda2 = m.one();

  plain(0);
  plain(1);
  edge("3_1", "2", m.gauss(3, 2), lambda2);
  edge("3_0", "2", m.gauss(3, 2), m.gauss(5, 1) - lambda2);
  edge("4_1", "3_1", m.one(), m.gauss(4, 1));
  edge("4_1", "3_0", m.gauss(4, 3) - m.one(), alpha2_30);
  edge("4_0", "3_0", m.gauss(4, 3), m.gauss(4, 1) - alpha2_30);
  edge("5", "4_1", (m.q_pow(2) + m.one()) * m.q_int(2), m.gauss(3, 1));
  edge("5", "4_0", m.q_pow(4), m.gauss(3, 1));
  plain(5);
  plain(6);

  for (const auto& e : g.edges) {
    if (!(g.nodes[e.upper].count * e.down_mult == g.nodes[e.lower].count * e.up_mult)) {
      throw InvariantViolation("double counting fails on edge " + g.nodes[e.lower].type_label + " -- " +
                               g.nodes[e.upper].type_label);
    }
  }
  return g;
}

FanoDerived fano_derived_design(const QMode& mode) {
  const QMode& m = mode;
  const auto rows = fano_distribution(mode);
  const DistributionRow& r5 = row(rows, "5");
  const DistributionRow& r41 = row(rows, "4_1");
  const DistributionRow& r40 = row(rows, "4_0");
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation("derived design: " + what);
  };

  std::vector<CountingStep> steps;
  const Scalar blocks_in_5 = r5.vector.alphas[kK];
  require(blocks_in_5 == m.q_pow(2) + m.one(), "blocks per 5-space differ from q^2+1");
  steps.push_back({"blocks contained in a 5-space", blocks_in_5, "alpha_3 of the s=5 row"});

  // each such block lies in [5-3, 4-3] = q+1 four-spaces of the 5-space
  const Scalar t41 = blocks_in_5 * m.gauss(5 - kK, 4 - kK);
  require(r5.count * t41 == r41.count * m.gauss(kV - 4, 1), "type 4_1 count does not match the 4_1 row");
  steps.push_back({"type 4_1 spaces in a 5-space", t41, "count(5) * value = count(4_1) * [3,1]"});

  const Scalar t40 = m.gauss(5, 4) - t41;
  require(t40 == m.q_pow(4), "type 4_0 per 5-space differs from q^4");
  require(r5.count * t40 == r40.count * m.gauss(kV - 4, 1), "type 4_0 count does not match the 4_0 row");
  steps.push_back({"type 4_0 spaces in a 5-space", t40, "count(5) * value = count(4_0) * [3,1]"});

  DesignParams derived{m, 2, kV, kK, t40};
  require(lambdas(derived).front() == r40.count, "derived block count differs from count(4_0)");
  DesignParams complement = complement_params(derived);
  require(complement.lambda == t41, "complement lambda differs from the 4_1 value");
  require(lambdas(complement).front() == r41.count, "complement block count differs from count(4_1)");
  return {std::move(steps), std::move(derived), std::move(complement)};
}

}  // namespace qdesign
