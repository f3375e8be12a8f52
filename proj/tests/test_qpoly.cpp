#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qdesign/errors.hpp"
#include "qdesign/qpoly.hpp"

using namespace qdesign;

namespace {

QPolynomial P(const char* text) { return parse_polynomial(text); }

// sign-and-q-power factor (-1)^e q^{C(e,2)}
QPolynomial sq(int e) {
  QPolynomial p = QPolynomial::q_power(static_cast<std::size_t>(e * (e - 1) / 2));
  return e % 2 ? -p : p;
}

}  // namespace

TEST_CASE("q-integers and q-factorials") {
  CHECK(q_integer(0).is_zero());
  CHECK(q_integer(3) == P("q^2 + q + 1"));
  CHECK(q_integer(5).eval(1) == 5);
  CHECK(q_factorial(0).is_one());
  CHECK(q_factorial(2) == P("q + 1"));
  CHECK(q_factorial(3).eval(1) == 6);
}

TEST_CASE("gaussian binomials") {
  SUBCASE("[4,2] at q=2 counts the 2-subspaces of F_2^4") {
    const oracle::Space space(2, 4);
    CHECK(gauss_poly(4, 2).eval(2) == space.subspaces(2).size());
  }
  SUBCASE("[7,3] at q=2 and the Fano block count") {
    // 381 blocks: lambda_0 = [7,2]/[3,2]
    CHECK(exact_div(gauss_poly(7, 2), gauss_poly(3, 2)).eval(2) == 381);
  }
  SUBCASE("k outside 0..n") {
    CHECK(gauss_poly(5, 7).is_zero());
    CHECK(gauss_poly(5, -1).is_zero());
  }
  SUBCASE("agrees with the q-Pascal recursion at integer points") {
    for (int n = 0; n <= 12; ++n) {
      for (int k = 0; k <= n; ++k) {
        for (int q0 : {1, 2, 3, 7}) CHECK(gauss_poly(n, k).eval(q0) == oracle::gauss(n, k, q0));
      }
    }
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == P("q - 1"));
  CHECK(cyclotomic(6) == P("q^2 - q + 1"));
  CHECK(cyclotomic(6) * cyclotomic(1) * cyclotomic(2) * cyclotomic(3) == P("q^6 - 1"));
  CHECK(cyclotomic(7).eval(2) == 127);
  CHECK((cyclotomic(6) * cyclotomic(7)).eval(2) == 381);
  for (int d = 1; d <= 30; ++d) {
    for (int x : {2, 3, 5}) CHECK(oracle::Rat(cyclotomic(d).eval(x)) == oracle::cyclotomic_at(d, x));
  }
}

TEST_CASE("cyclotomic factorization") {
  SUBCASE("gaussian binomials split into cyclotomics with the floor-count exponents") {
    for (int n = 1; n <= 12; ++n) {
      for (int k = 0; k <= n; ++k) {
        const FactoredForm f = factor_cyclotomic(gauss_poly(n, k));
        CHECK(f.q_power == 0);
        CHECK(f.cofactor.is_one());
        std::map<std::int64_t, std::uint32_t> expected;
        for (int d = 2; d <= n; ++d) {
          const int e = n / d - k / d - (n - k) / d;
          if (e > 0) expected[d] = static_cast<std::uint32_t>(e);
        }
        CHECK(f.cyclotomic == expected);
      }
    }
    CHECK(render(gauss_poly(7, 3), PolyStyle::factored) == "Phi5*Phi6*Phi7");
  }
  SUBCASE("table presentations") {
    CHECK(render(P("q^8 - q^7 + q^3"), PolyStyle::factored) == "q^3*(q^5 - q^4 + 1)");
    CHECK(render(P("q^4 + q^2 + 1"), PolyStyle::factored) == "Phi3*Phi6");
    CHECK(render(P("q^8 + q^6 + q^5 + q^4 + q^3 + q^2 + 1"), PolyStyle::factored) == "Phi6*Phi7");
    CHECK(render(P("(q+1)^2*(q^2+1)"), PolyStyle::factored) == "Phi2^2*Phi4");
    CHECK(render(P("-2*q^3"), PolyStyle::factored) == "-2*q^3");
  }
  SUBCASE("zero") { CHECK_THROWS_WITH(factor_cyclotomic(QPolynomial()), "cannot factor zero"); }
  SUBCASE("cofactor is free of small cyclotomic factors") {
    const FactoredForm f = factor_cyclotomic(P("q^3*(q^5 - q^4 + 1)*(q^2 + q + 1)"));
    CHECK(f.q_power == 3);
    CHECK(f.cofactor == P("q^5 - q^4 + 1"));
    for (int d = 1; d <= f.cofactor.degree() + 1; ++d) CHECK_FALSE(try_exact_div(f.cofactor, cyclotomic(d)));
  }
}

TEST_CASE("ring operations") {
  CHECK(exact_div(P("q^4 + q^2 + 1"), P("q^2 + q + 1")) == P("q^2 - q + 1"));
  CHECK_THROWS_AS(exact_div(P("q^2 + 1"), P("q + 1")), NotDivisible);
  CHECK_THROWS_AS(exact_div(P("q"), QPolynomial()), std::invalid_argument);
  CHECK(P("q^4 + q^2 + 1").eval(3) == 91);
  CHECK(P("q^3 - 2*q").eval(-2) == -4);
  CHECK(pow(P("q + 1"), 3) == P("q^3 + 3*q^2 + 3*q + 1"));
}

TEST_CASE("rendering") {
  CHECK(render_expanded(P("q^8 - q^7 + q^3")) == "q^8 - q^7 + q^3");
  CHECK(render_expanded(P("q")) == "q");
  CHECK(render_expanded(P("-q^3 + 1")) == "-q^3 + 1");
  CHECK(render_expanded(P("2*q^2")) == "2*q^2");
  CHECK(render_expanded(QPolynomial()) == "0");
  CHECK(render(P("Phi2*Phi4*Phi6*Phi7"), PolyStyle::factored) == "Phi2*Phi4*Phi6*Phi7");
}

TEST_CASE("parser") {
  CHECK(P("Phi6") == cyclotomic(6));
  CHECK(P("2q^2 - (q - 1)") == P("2*q^2 - q + 1"));
  CHECK(P("-(q+1)^2") == P("-q^2 - 2*q - 1"));
  CHECK_THROWS(P("q^"));
  CHECK_THROWS(P("q + x"));
  CHECK_THROWS(P("(q + 1"));
}

// ---------------------------------------------------------------------------
// identities

TEST_CASE("symmetry, both q-Pascal identities and the degree formula") {
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const QPolynomial g = gauss_poly(n, k);
      CHECK(g == gauss_poly(n, n - k));
      CHECK(g.degree() == k * (n - k));
      if (k >= 1) {
        const auto qk = QPolynomial::q_power(static_cast<std::size_t>(k));
        const auto qnk = QPolynomial::q_power(static_cast<std::size_t>(n - k));
        CHECK(g == gauss_poly(n - 1, k - 1) + qk * gauss_poly(n - 1, k));
        CHECK(g == qnk * gauss_poly(n - 1, k - 1) + gauss_poly(n - 1, k));
      }
    }
  }
}

TEST_CASE("inverse q-Pascal identity") {
  for (int a = 0; a <= 12; ++a) {
    for (int b = a; b <= 12; ++b) {
      QPolynomial sum;
      for (int i = a; i <= b; ++i) sum += sq(i - a) * gauss_poly(b, i) * gauss_poly(i, a);
      CHECK(sum == QPolynomial(a == b ? 1 : 0));
    }
  }
}

TEST_CASE("alternating sum of a row") {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 0; k <= 10; ++k) {
      QPolynomial sum;
      for (int i = 0; i <= k; ++i) sum += sq(i) * gauss_poly(n, i);
      CHECK(sum == -sq(k + 1) * gauss_poly(n - 1, k));
    }
  }
}

TEST_CASE("evaluation at q = 1 gives binomial coefficients") {
  for (int n = 0; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(gauss_poly(n, k).eval(1) == oracle::choose(n, k));
  }
}

TEST_CASE("factorization round trip on random products") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> index(1, 24);
  std::uniform_int_distribution<int> count(0, 5);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int a = count(rng);
    QPolynomial p = QPolynomial::q_power(static_cast<std::size_t>(a));
    std::map<std::int64_t, std::uint32_t> expected;
    for (int f = count(rng); f > 0; --f) {
      const int d = index(rng);
      p *= cyclotomic(d);
      ++expected[d];
    }
    if (sign(rng)) p = -p;
    const FactoredForm form = factor_cyclotomic(p);
    CHECK(form.expand() == p);
    CHECK(form.q_power == static_cast<std::size_t>(a));
    CHECK(form.cyclotomic == expected);
    CHECK(parse_polynomial(render(p, PolyStyle::factored)) == p);
    CHECK(parse_polynomial(render(p, PolyStyle::expanded)) == p);
  }
}
