#include <doctest.h>

#include <functional>

#include "oracle.hpp"
#include "qdesign/errors.hpp"
#include "qdesign/intersect.hpp"

using namespace qdesign;

namespace {

Scalar num(long long n) { return Scalar(BigInt(n)); }
Scalar poly(const char* text) { return Scalar(parse_polynomial(text)); }

IntersectionVector vec(int s, std::initializer_list<long long> xs) {
  IntersectionVector v;
  v.s = s;
  for (auto x : xs) v.alphas.push_back(num(x));
  return v;
}

const DesignParams kFano = DesignParams::symbolic(2, 7, 3, QPolynomial(1));
const DesignParams k3_11_5_2 = DesignParams::at(1, 3, 11, 5, 2);

// Brute-force feasibility: every tuple of free values with sum <= lambda_0,
// solved by back substitution, filtered by the same side conditions.
std::vector<std::vector<oracle::Int>> brute_feasible(int q, int t, int v, int k, int lambda, int s, bool block) {
  std::vector<oracle::Rat> lam(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) {
    lam[i] = oracle::Rat(lambda * oracle::gauss(v - i, t - i, q), oracle::gauss(k - i, t - i, q));
  }
  const oracle::Int lambda0 = numerator(lam[0]);
  const oracle::Int contain = lambda * oracle::gauss(s, t, q) / oracle::gauss(k, t, q);
  std::vector<std::vector<oracle::Int>> out;
  std::vector<oracle::Int> free(static_cast<std::size_t>(k - t), 0);
  std::function<void(std::size_t, oracle::Int)> rec = [&](std::size_t pos, oracle::Int budget) {
    if (pos == free.size()) {
      const auto a = oracle::solve_mendelsohn(q, t, v, k, lambda, s, free);
      std::vector<oracle::Int> full;
      for (int i = 0; i <= k; ++i) {
        if (denominator(a[i]) != 1 || a[i] < 0) return;
        const bool impossible = i > s || k - i > v - s;
        if (impossible && a[i] != 0) return;
        full.push_back(numerator(a[i]));
      }
      if (s >= k && full[k] > contain) return;
      if (s == k && full[k] > 1) return;
      if (lambda == 1 && s >= k && 2 * k - s >= t && full[k] > 1) return;
      if (block && full[k] != 1) return;
      out.push_back(full);
      return;
    }
    for (oracle::Int x = 0; x <= budget; ++x) {
      free[pos] = x;
      rec(pos + 1, budget - x);
    }
    free[pos] = 0;
  };
  rec(0, lambda0);
  return out;
}

std::vector<std::vector<oracle::Int>> as_ints(const FeasibleSet& set) {
  std::vector<std::vector<oracle::Int>> out;
  for (const auto& v : set.vectors) {
    std::vector<oracle::Int> row;
    for (const auto& a : v.alphas) row.push_back(a.integer());
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST_CASE("Mendelsohn rows") {
  SUBCASE("row 0 is the block count") {
    const auto sys = mendelsohn_system(kFano, 4);
    for (int j = 0; j <= 3; ++j) CHECK(sys.matrix[0][static_cast<std::size_t>(j)] == poly("1"));
    CHECK(sys.rhs[0] == lambdas(kFano)[0]);
  }
  SUBCASE("table vectors satisfy every row") {
    CHECK(mendelsohn_system(DesignParams::at(2, 2, 7, 3, 1), 5).satisfied_by(vec(5, {0, 256, 120, 5})));
    CHECK(mendelsohn_system(k3_11_5_2, 5).satisfied_by(vec(5, {2, 0, 20, 10, 0, 1})));
  }
  SUBCASE("a perturbed vector is caught at the first broken row") {
    const auto sys = mendelsohn_system(DesignParams::at(2, 2, 7, 3, 1), 5);
    CHECK(sys.first_violation(vec(5, {1, 255, 120, 5})) == 1);
    CHECK(sys.first_violation(vec(5, {0, 256, 121, 5})) == 0);
  }
}

TEST_CASE("Koehler equations") {
  SUBCASE("3-(11,5,2) block") {
    const auto f = koehler_forms(k3_11_5_2, 5);
    CHECK(f.equation(1) == "alpha_1 = 15 - 4*alpha_4 - 15*alpha_5");
    CHECK(f.equation(0) == "alpha_0 = -2 + alpha_4 + 4*alpha_5");
    CHECK(f.constants[1] == num(15));
    CHECK(f.coeff(1, 4) == num(-4));
    CHECK(f.coeff(1, 5) == num(-15));
  }
  SUBCASE("q-Fano, s = 4") {
    const auto f = koehler_forms(kFano, 4);
    CHECK(f.equation(0) == "alpha_0 = (q^8 - q^7 + q^3) - q^3*alpha_3");
    CHECK(f.constants[0] == poly("q^8 - q^7 + q^3"));
    CHECK(f.coeff(0, 3) == poly("-q^3"));
  }
  SUBCASE("s = k = t has no free terms") {
    const auto f = koehler_forms(DesignParams::at(2, 2, 2, 2, 1), 2);
    CHECK(f.coeffs[2].empty());
    CHECK(f.value(2, {}) == num(1));
  }
  SUBCASE("agrees with back substitution over Q") {
    struct Case {
      int q, t, v, k, lambda;
    };
    for (const Case c : {Case{2, 2, 7, 3, 1}, Case{3, 2, 7, 3, 1}, Case{1, 3, 11, 5, 2}, Case{1, 2, 8, 4, 3},
                         Case{2, 1, 6, 3, 1}, Case{1, 4, 12, 6, 2}}) {
      const auto p = DesignParams::at(c.q, c.t, c.v, c.k, c.lambda);
      for (int s = 0; s <= c.v; ++s) {
        const auto f = koehler_forms(p, s);
        for (int trial = 0; trial < 5; ++trial) {
          std::vector<oracle::Int> fv;
          std::vector<Scalar> free;
          for (int j = c.t + 1; j <= c.k; ++j) {
            fv.push_back((j * 7 + trial * 3 + s) % 5);
            free.push_back(Scalar(BigInt(fv.back())));
          }
          const auto expected = oracle::solve_mendelsohn(c.q, c.t, c.v, c.k, c.lambda, s, fv);
          for (int i = 0; i <= c.t; ++i) CHECK(oracle::Rat(f.value(i, free).integer()) == expected[i]);
        }
      }
    }
  }
  SUBCASE("inverse-matrix route") {
    for (int s = 0; s <= 7; ++s) CHECK(koehler_forms_via_inverse(kFano, s) == koehler_forms(kFano, s));
  }
}

TEST_CASE("unique vectors") {
  SUBCASE("q-Fano s = 6") {
    const auto u = unique_vector(kFano, 6);
    CHECK(u.alphas[0] == poly("0"));
    CHECK(u.alphas[1] == poly("0"));
    CHECK(u.alphas[2] == poly("q^4*Phi3*Phi6"));
    CHECK(u.alphas[3] == poly("Phi2*Phi4*Phi6"));
  }
  SUBCASE("2-(7,3,1)_3 s = 5") {
    CHECK(unique_vector(DesignParams::at(3, 2, 7, 3, 1), 5) == vec(5, {0, 6561, 1080, 10}));
  }
  SUBCASE("s = 0") {
    CHECK(unique_vector(DesignParams::at(2, 2, 7, 3, 1), 0) == vec(0, {381, 0, 0, 0}));
  }
  SUBCASE("out of range") { CHECK_THROWS_AS(unique_vector(kFano, 3), std::domain_error); }
  SUBCASE("second order on the spread 1-(4,2,1)_2") {
    // 5 blocks, pairwise trivially intersecting: pairs meet S in 0
    CHECK(unique_vector(DesignParams::at(2, 1, 4, 2, 1), 1, 2) == [] {
      auto v = vec(1, {10, 0, 0});
      v.order = 2;
      return v;
    }());
    CHECK_THROWS(unique_vector(DesignParams::at(2, 1, 4, 2, 1), 3, 2));
  }
}

TEST_CASE("feasible vectors") {
  SUBCASE("2-(7,3,1)_2 s = 4") {
    const auto set = enumerate_feasible(DesignParams::at(2, 2, 7, 3, 1), 4);
    REQUIRE(set.vectors.size() == 2);
    CHECK(set.vectors[0] == vec(4, {136, 210, 35, 0}));
    CHECK(set.vectors[1] == vec(4, {128, 224, 28, 1}));
    CHECK_FALSE(set.constraints.empty());
  }
  SUBCASE("3-(11,5,2) with S a block") {
    EnumerateOptions o;
    o.s_is_block = true;
    const auto set = enumerate_feasible(k3_11_5_2, 5, o);
    REQUIRE(set.vectors.size() == 1);
    CHECK(set.vectors[0] == vec(5, {2, 0, 20, 10, 0, 1}));
  }
  SUBCASE("s <= t gives the unique vector") {
    const auto p = DesignParams::at(2, 2, 7, 3, 1);
    for (int s = 0; s <= 2; ++s) {
      const auto set = enumerate_feasible(p, s);
      REQUIRE(set.vectors.size() == 1);
      CHECK(set.vectors[0] == unique_vector(p, s));
    }
  }
  SUBCASE("matches the brute-force search") {
    struct Case {
      int q, t, v, k, lambda, s;
      bool block;
    };
    for (const Case c : {Case{2, 2, 7, 3, 1, 3, false}, Case{2, 2, 7, 3, 1, 4, false}, Case{3, 2, 7, 3, 1, 3, true},
                         Case{1, 3, 11, 5, 2, 5, true}, Case{1, 3, 11, 5, 2, 6, false}, Case{1, 2, 8, 4, 3, 4, false},
                         Case{1, 2, 8, 4, 3, 5, false}, Case{1, 2, 6, 3, 2, 3, false}, Case{1, 2, 7, 3, 1, 4, false}}) {
      CAPTURE(c.v);
      CAPTURE(c.s);
      EnumerateOptions o;
      o.s_is_block = c.block;
      CHECK(as_ints(enumerate_feasible(DesignParams::at(c.q, c.t, c.v, c.k, c.lambda), c.s, o)) ==
            brute_feasible(c.q, c.t, c.v, c.k, c.lambda, c.s, c.block));
    }
  }
  SUBCASE("node budget") {
    EnumerateOptions o;
    o.node_budget = 3;
    CHECK_THROWS_AS(enumerate_feasible(DesignParams::at(1, 2, 8, 4, 3), 4, o), GuardExceeded);
  }
  SUBCASE("symbolic mode is rejected") { CHECK_THROWS_AS(enumerate_feasible(kFano, 4), std::invalid_argument); }
}

TEST_CASE("nonexistence of 3-(11,5,2)") {
  const auto cert = nonexistence_check(k3_11_5_2);
  CHECK(cert.stage == CertificateStage::unique_vector_pigeonhole);
  CHECK(cert.realizable_excluded());
  REQUIRE(cert.forced_vector);
  CHECK(*cert.forced_vector == vec(5, {2, 0, 20, 10, 0, 1}));
  CHECK(cert.pigeonhole_dimension == 4);
  CHECK(cert.recheck());

  auto tampered = cert;
  tampered.forced_vector->alphas[4] = num(1);
  CHECK_FALSE(tampered.recheck());
}

TEST_CASE("nonexistence verdicts that need no pigeonhole") {
  SUBCASE("the q-Fano parameters stay open") {
    for (int q : {2, 3}) CHECK(nonexistence_check(DesignParams::at(q, 2, 7, 3, 1)).stage == CertificateStage::feasible);
    CHECK(nonexistence_check(DesignParams::at(1, 2, 7, 3, 1)).stage == CertificateStage::feasible);
  }
  SUBCASE("inadmissible") { CHECK_THROWS_AS(nonexistence_check(DesignParams::at(1, 2, 6, 3, 1)), NotAdmissible); }
}

TEST_CASE("family t4: 4-(C(n,2)+2, n+1, 2)") {
  CHECK(family_member(Family::t4, 8).skip_reason != "");
  CHECK_FALSE(family_member(Family::t4, 8).params);
  CHECK_FALSE(family_member(Family::t4, 4).params);
  for (int n = 5; n <= 50; ++n) {
    if (n % 4 == 0) continue;
    const auto m = family_member(Family::t4, n);
    REQUIRE(m.params);
    CHECK(*m.params == DesignParams::at(1, 4, n * (n - 1) / 2 + 2, n + 1, 2));
    const auto cert = nonexistence_check(*m.params);
    REQUIRE(cert.stage == CertificateStage::koehler_negativity);
    REQUIRE(cert.negativity);
    CHECK(cert.negativity->index == 0);
    // constant (n-1)(n-2)^2(n-3)/24 and coefficient -C(n,4)
    const oracle::Rat constant(oracle::Int((n - 1) * (n - 2) * (n - 2) * (n - 3)), 24);
    CHECK(oracle::Rat(cert.negativity->constant.integer()) == constant);
    CHECK(cert.negativity->coefficient.integer() == -oracle::choose(n, 4));
    CHECK(oracle::Rat(cert.negativity->bound.integer()) == oracle::Rat(-(n - 1) * (n - 2) * (n - 3), 12));
    CHECK(cert.recheck());
  }
}

TEST_CASE("family t3: 3-((2n-1)(4n-1)+1, 4n-1, 1)") {
  const auto first = nonexistence_check(*family_member(Family::t3, 2).params);
  CHECK(first.lambdas == std::vector<Scalar>{num(44), num(14), num(4), num(1)});
  for (int n = 2; n <= 50; ++n) {
    const auto m = family_member(Family::t3, n);
    REQUIRE(m.params);
    CHECK(*m.params == DesignParams::at(1, 3, (2 * n - 1) * (4 * n - 1) + 1, 4 * n - 1, 1));
    const auto cert = nonexistence_check(*m.params);
    REQUIRE(cert.stage == CertificateStage::koehler_negativity);
    REQUIRE(cert.negativity);
    CHECK(cert.negativity->index == 1);
    const oracle::Int c = oracle::Int(n - 1) * (4 * n - 1) * (4 * n - 3);
    CHECK(cert.negativity->constant.integer() == c);
    CHECK(cert.negativity->coefficient.integer() == -oracle::Int(4 * n - 1) * oracle::choose(4 * n - 3, 2));
    CHECK(cert.negativity->bound.integer() == -c);
    // lambda chain 2n, n(4n-1), 2n(4n^2-3n+1)
    CHECK(cert.lambdas[2] == num(2 * n));
    CHECK(cert.lambdas[1] == num(n * (4 * n - 1)));
    CHECK(cert.lambdas[0] == Scalar(BigInt(2 * n) * (4 * n * n - 3 * n + 1)));
  }
}

TEST_CASE("tampered negativity witness fails recheck") {
  auto cert = nonexistence_check(*family_member(Family::t3, 3).params);
  REQUIRE(cert.negativity);
  cert.negativity->bound = cert.negativity->bound + num(1);
  CHECK_FALSE(cert.recheck());
}

TEST_CASE("family scans") {
  const auto rows = scan_family(Family::t4, 5, 12);
  CHECK(rows.size() == 8);
  for (const auto& row : rows) {
    if (row.member.n % 4 == 0) {
      CHECK_FALSE(row.certificate);
    } else {
      CHECK(row.admissible);
      REQUIRE(row.certificate);
      CHECK(row.certificate->realizable_excluded());
    }
  }
}

TEST_CASE("q-Pascal matrices") {
  const QMode sym = QMode::symbolic();
  const auto a = pascal_matrix(sym, 4);
  CHECK(a[1][3] == poly("q^2 + q + 1"));
  CHECK(a[3][1] == poly("0"));
  const auto b = pascal_inverse(sym, 4);
  CHECK(b[0][2] == poly("q"));
  CHECK(b[1][3] == poly("q^3 + q^2 + q"));
}
