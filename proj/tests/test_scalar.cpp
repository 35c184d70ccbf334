#include <random>

#include "doctest.h"
#include "qplane/scalar.hpp"

using namespace qplane;

namespace {

Scalar P(const std::string& s) { return parse_scalar(s); }

Scalar random_scalar(std::mt19937_64& rng, bool with_rho) {
  std::uniform_int_distribution<int> coeff(-4, 4), expo(-3, 3), pick(0, 5);
  Scalar num, den;
  for (int k = 0; k < 3; ++k) num += Scalar(GaussRational(coeff(rng), coeff(rng))) * Scalar::s().pow(expo(rng));
  den = Scalar::s().pow(expo(rng)) + Scalar(GaussRational(coeff(rng)));
  if (den.is_zero()) den = Scalar(1);
  Scalar out = num / den;
  if (with_rho && pick(rng) == 0) out = out * Scalar::aux("rho", expo(rng)) + Scalar(coeff(rng));
  return out;
}

}  // namespace

TEST_CASE("gaussian rationals") {
  auto a = GaussRational::from_string("3/4");
  CHECK(a.to_string() == "3/4");
  CHECK((GaussRational(0, 1) * GaussRational(0, 1)) == GaussRational(-1));
  CHECK(GaussRational(0, 1).to_string() == "i");
  CHECK(GaussRational(0, -1).to_string() == "-i");
  CHECK(GaussRational(-1).sqrt().value() == GaussRational(0, 1));
  CHECK(GaussRational(4, 0).sqrt().value() == GaussRational(2));
  CHECK_FALSE(GaussRational(2).sqrt().has_value());
  CHECK_THROWS_AS(GaussRational(0).inverse(), std::domain_error);
}

TEST_CASE("polynomials") {
  Polynomial x = Polynomial::monomial(GaussRational(1), 1);
  Polynomial a = x * x - Polynomial(GaussRational(1));
  Polynomial b = x - Polynomial(GaussRational(1));
  CHECK(gcd(a, b) == b);
  auto [quo, rem] = a.divmod(b);
  CHECK(rem.is_zero());
  CHECK(quo == x + Polynomial(GaussRational(1)));
  CHECK(a.eval(GaussRational(3)) == GaussRational(8));
}

TEST_CASE("field operations") {
  CHECK((P("q - q^-1") - P("q - q^-1")).is_zero());
  CHECK((P("1/rho") * P("rho")).is_one());
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), ScalarError);
  CHECK_THROWS_AS(Scalar(1) / P("1 - rho"), ScalarError);
  CHECK(P("q") == Scalar::s() * Scalar::s());
  CHECK(P("(q^2 - 1)/(q - 1)") == P("q + 1"));
  CHECK(P("q^(1)") == P("q"));
  CHECK(P("-(s)") == -Scalar::s());
  CHECK(P("i*i") == Scalar(-1));
}

TEST_CASE("specialization") {
  Specialization at_i(GaussRational(0, 1));
  CHECK(P("q - q^-1").specialize(at_i).is_zero());
  CHECK(P("s").specialize(at_i) == Scalar::i());
  CHECK_THROWS_AS(P("1/(q+1)").specialize(at_i), ScalarError);
  CHECK(Specialization::from_q(GaussRational(-1)).s_value == GaussRational(0, 1));
  CHECK(P("rho*q").specialize(at_i) == -Scalar::aux("rho"));
}

TEST_CASE("canonical printing") {
  CHECK(P("q - q^-1").to_string() == "s^2 - s^-2");
  CHECK(P("0").to_string() == "0");
  CHECK(P("1/(1+q)").to_string() == "1/(s^2 + 1)");
  CHECK(P("rho^-1").to_string() == "rho^-1");
  CHECK(P("-1").prints_negative());
}

TEST_CASE("parse errors carry a position") {
  try {
    P("1 + * 2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(P("foo"), ParseError);
  CHECK_THROWS_AS(P("(1"), ParseError);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(20260101);
  int checked = 0, inverses = 0;
  for (int n = 0; n < 1000; ++n) {
    Scalar a = random_scalar(rng, true), b = random_scalar(rng, true), c = random_scalar(rng, true);
    REQUIRE(((a + b) + c) == (a + (b + c)));
    REQUIRE((a * (b + c)) == (a * b + a * c));
    REQUIRE(((a * b) * c) == (a * (b * c)));
    if (a.is_monomial()) {
      REQUIRE((a * a.inverse()).is_one());
      ++inverses;
    }
    ++checked;
  }
  CHECK(checked == 1000);
  CHECK(inverses > 500);
}

TEST_CASE("parse and print round trip") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 300; ++n) {
    Scalar a = random_scalar(rng, true);
    Scalar back = P(a.to_string());
    REQUIRE(back == a);
    REQUIRE(back.to_string() == a.to_string());
  }
}

TEST_CASE("specialization is a ring homomorphism") {
  std::mt19937_64 rng(11);
  Specialization at_i(GaussRational(0, 1));
  int tested = 0;
  for (int n = 0; n < 300; ++n) {
    Scalar a = random_scalar(rng, true), b = random_scalar(rng, true);
    try {
      Scalar sa = a.specialize(at_i), sb = b.specialize(at_i);
      REQUIRE((a * b).specialize(at_i) == sa * sb);
      REQUIRE((a + b).specialize(at_i) == sa + sb);
      ++tested;
    } catch (const ScalarError&) {
    }
  }
  CHECK(tested > 100);
}
