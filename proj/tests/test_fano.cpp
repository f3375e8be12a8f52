#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "oracle.hpp"
#include "qdesign/errors.hpp"
#include "qdesign/fano.hpp"
#include "reference_tables.hpp"

using namespace qdesign;
using namespace reference;

namespace {

void check_numeric_table(int q, const std::vector<TableRow>& table) {
  const auto rows = fano_distribution(QMode::numeric(q));
  REQUIRE(rows.size() == table.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CAPTURE(r);
    CHECK(rows[r].s == table[r].s);
    CHECK(rows[r].count.integer() == BigInt(table[r].count));
    for (std::size_t i = 0; i < 4; ++i) CHECK(rows[r].vector.alphas[i].integer() == BigInt(table[r].alpha[i]));
  }
}

}  // namespace

TEST_CASE("distribution at q = 2") { check_numeric_table(2, kTableQ2); }
TEST_CASE("distribution at q = 3") { check_numeric_table(3, kTableQ3); }

TEST_CASE("symbolic distribution") {
  const auto rows = fano_distribution(QMode::symbolic());
  REQUIRE(rows.size() == kTableSym.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CAPTURE(r);
    const TableRow& want = kTableSym[r];
    CHECK(rows[r].s == want.s);
    CHECK(rows[r].count.poly() == parse_polynomial(want.count));
    CHECK(rows[r].count.str(PolyStyle::factored) == normalize_factors(want.count));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(rows[r].vector.alphas[i].poly() == parse_polynomial(want.alpha[i]));
      CHECK(rows[r].vector.alphas[i].str(PolyStyle::factored) == normalize_factors(want.alpha[i]));
    }
  }
  CHECK(rows[4].type_label == "4_0");
  CHECK(rows[4].count.poly() == parse_polynomial("q^4*Phi6*Phi7"));
}

TEST_CASE("level sums are the gaussian binomials") {
  for (const QMode& mode : {QMode::symbolic(), QMode::numeric(1), QMode::numeric(2), QMode::numeric(4)}) {
    std::map<int, Scalar> sums;
    for (const auto& row : fano_distribution(mode)) {
      auto [it, fresh] = sums.emplace(row.s, row.count);
      if (!fresh) it->second += row.count;
    }
    for (const auto& [s, sum] : sums) CHECK(sum == mode.gauss(7, s));
  }
}

TEST_CASE("structure graph at q = 2") {
  const auto g = fano_structure_graph(QMode::numeric(2));
  REQUIRE(g.nodes.size() == 10);
  REQUIRE(g.edges.size() == 11);
  CHECK(g.double_counting_holds());
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    seen[{g.nodes[e.lower].type_label, g.nodes[e.upper].type_label}] = {
        static_cast<int>(e.up_mult.integer()), static_cast<int>(e.down_mult.integer())};
  }
  CHECK(seen == kFigureQ2);
}

TEST_CASE("structure graph double counting") {
  CHECK(fano_structure_graph(QMode::symbolic()).double_counting_holds());
  for (int q = 1; q <= 9; ++q) CHECK(fano_structure_graph(QMode::numeric(q)).double_counting_holds());
}

TEST_CASE("DOT output") {
  const std::string dot = fano_structure_graph(QMode::numeric(2)).to_dot();
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("label=\"(136, 210, 35, 0)^6096\"") != std::string::npos);
  CHECK(dot.find("label=\"7/14\"") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '\n') >= 23);
}

TEST_CASE("derived design") {
  const auto d = fano_derived_design(QMode::symbolic());
  CHECK(d.derived == DesignParams::symbolic(2, 7, 3, parse_polynomial("q^4")));
  CHECK(d.complement == DesignParams::symbolic(2, 7, 3, parse_polynomial("q^3 + q^2 + q + 1")));
  REQUIRE(d.steps.size() >= 3);
  CHECK(d.steps[0].value.poly() == parse_polynomial("q^2 + 1"));
  CHECK(d.steps[1].value.poly() == parse_polynomial("(q^2 + 1)*(q + 1)"));
  CHECK(d.steps[2].value.poly() == parse_polynomial("q^4"));
  CHECK(d.derived.lambda.poly() + d.complement.lambda.poly() == gauss_poly(5, 1));
  CHECK(fano_derived_design(QMode::numeric(2)).derived == DesignParams::at(2, 2, 7, 3, 16));
}

// ---------------------------------------------------------------------------
// q = 1: the Fano plane itself

namespace {

std::vector<int> histogram(const std::set<int>& s) {
  std::vector<int> h(4, 0);
  for (const auto& line : oracle::fano_lines()) ++h[static_cast<std::size_t>(oracle::meet_size(line, s))];
  return h;
}

std::vector<int> as_vector(const IntersectionVector& v) {
  std::vector<int> out;
  for (const auto& a : v.alphas) out.push_back(static_cast<int>(a.integer()));
  return out;
}

bool subset_of(const std::set<int>& a, const std::set<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("q = 1 distribution equals the Fano plane census") {
  const auto rows = fano_distribution(QMode::numeric(1));
  for (int s = 0; s <= 7; ++s) {
    std::map<std::vector<int>, int> census;
    for (const auto& S : oracle::subsets(7, s)) ++census[histogram(S)];
    std::map<std::vector<int>, int> ours;
    for (const auto& row : rows) {
      if (row.s == s) ours[as_vector(row.vector)] = static_cast<int>(row.count.integer());
    }
    CHECK(ours == census);
  }
}

TEST_CASE("q = 1 structure graph equals containment counts") {
  const auto g = fano_structure_graph(QMode::numeric(1));
  for (const auto& e : g.edges) {
    const auto& lo = g.nodes[e.lower];
    const auto& hi = g.nodes[e.upper];
    const auto lo_vec = as_vector(lo.vector);
    const auto hi_vec = as_vector(hi.vector);
    std::vector<std::set<int>> lows;
    std::vector<std::set<int>> highs;
    for (const auto& S : oracle::subsets(7, lo.s)) {
      if (histogram(S) == lo_vec) lows.push_back(S);
    }
    for (const auto& S : oracle::subsets(7, hi.s)) {
      if (histogram(S) == hi_vec) highs.push_back(S);
    }
    // each multiplicity must be constant over its type
    std::set<int> downs;
    std::set<int> ups;
    for (const auto& H : highs) {
      downs.insert(static_cast<int>(std::count_if(lows.begin(), lows.end(), [&](const auto& L) { return subset_of(L, H); })));
    }
    for (const auto& L : lows) {
      ups.insert(static_cast<int>(std::count_if(highs.begin(), highs.end(), [&](const auto& H) { return subset_of(L, H); })));
    }
    CAPTURE(lo.type_label);
    CAPTURE(hi.type_label);
    CHECK(downs == std::set<int>{static_cast<int>(e.down_mult.integer())});
    CHECK(ups == std::set<int>{static_cast<int>(e.up_mult.integer())});
  }
}

TEST_CASE("q = 1 derived designs from complements of 4-sets") {
  auto design_lambda = [](const std::vector<int>& type) {
    std::vector<std::set<int>> blocks;
    for (const auto& S : oracle::subsets(7, 4)) {
      if (histogram(S) != type) continue;
      std::set<int> c;
      for (int x = 0; x < 7; ++x) {
        if (!S.count(x)) c.insert(x);
      }
      blocks.push_back(c);
    }
    std::set<int> counts;
    for (const auto& pair : oracle::subsets(7, 2)) {
      counts.insert(static_cast<int>(
          std::count_if(blocks.begin(), blocks.end(), [&](const auto& b) { return subset_of(pair, b); })));
    }
    return counts;
  };
  const auto d = fano_derived_design(QMode::numeric(1));
  CHECK(design_lambda({1, 0, 6, 0}) == std::set<int>{static_cast<int>(d.derived.lambda.integer())});
  CHECK(design_lambda({0, 3, 3, 1}) == std::set<int>{static_cast<int>(d.complement.lambda.integer())});
}
