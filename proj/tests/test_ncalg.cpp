#include "doctest.h"
#include "matrices.hpp"

using namespace qplane;

namespace {

Scalar P(const std::string& s) { return parse_scalar(s); }

const RewriteSystem& gl2() {
  static const RewriteSystem sys = build_rewrite_system(qtest::gl2_data());
  return sys;
}

const RewriteSystem& orth3() {
  static const RewriteSystem sys = build_rewrite_system(qtest::orth3_data());
  return sys;
}

AlgebraElement E(const RewriteSystem& sys, const std::string& text) { return sys.parse(text); }

}  // namespace

TEST_CASE("rule families and termination") {
  const auto& sys = orth3();
  CHECK(sys.rules("coord").size() == 3);
  CHECK(sys.rules("diff").size() == 6);
  CHECK(sys.rules("diff-coord").size() == 9);
  CHECK(sys.rules("deriv-coord").size() == 9);
  CHECK(sys.rules("deriv-diff").size() == 9);
  CHECK(sys.rules("deriv-deriv").empty());
  for (const auto& r : sys.rules()) {
    Word lhs{r.first, r.second};
    for (const auto& [w, c] : r.rhs.terms()) CHECK(WordLess{}(w, lhs));
  }
  // Eq. (38)-style readings of the rules.
  CHECK(sys.normal_form(E(sys, "d(x+)*x+")) == E(sys, "q^-2*x+*d(x+)"));
  CHECK(sys.normal_form(E(sys, "D(x-)*x+")) == E(sys, "x+*D(x-)"));
}

TEST_CASE("two-dimensional coordinate and differential rules") {
  const auto& sys = gl2();
  auto coord = sys.rules("coord");
  REQUIRE(coord.size() == 1);
  CHECK(sys.alphabet().word_string({coord[0].first, coord[0].second}) == "y*x");
  CHECK(coord[0].rhs == E(sys, "q^-1*x*y"));
  auto diff = sys.rules("diff");
  REQUIRE(diff.size() == 3);
  CHECK(sys.normal_form(E(sys, "d(x)*d(x)")).is_zero());
  CHECK(sys.normal_form(E(sys, "d(y)*d(y)")).is_zero());
  CHECK(sys.normal_form(E(sys, "d(y)*d(x)")) == E(sys, "-q*d(x)*d(y)"));
  // ξ^iξ^j = -q^-1 ξ^jξ^i for i < j, read back from the rule.
  CHECK(sys.normal_form(E(sys, "d(x)*d(y) + q^-1*d(y)*d(x)")).is_zero());
}

TEST_CASE("normal forms on the two-dimensional plane") {
  const auto& sys = gl2();
  CHECK(sys.normal_form(E(sys, "y*x")) == E(sys, "q^-1*x*y"));
  CHECK(sys.normal_form(E(sys, "D(x)*x")) == E(sys, "1 + q^2*x*D(x) + (q^2 - 1)*y*D(y)"));
  CHECK(sys.multiply(E(sys, "x"), E(sys, "y")) == E(sys, "x*y"));
  CHECK(sys.multiply(E(sys, "y"), E(sys, "x")) == E(sys, "q^-1*x*y"));
  auto e = sys.normal_form(E(sys, "y*d(x)*x + D(y)*y*x"));
  CHECK(sys.multiply(e, E(sys, "1")) == e);
}

TEST_CASE("derivatives and transport") {
  const auto& sys = gl2();
  int x = *sys.alphabet().rank_of("x"), y = *sys.alphabet().rank_of("y");
  CHECK(sys.derivative_action(x, E(sys, "x")) == E(sys, "1"));
  CHECK(sys.derivative_action(x, E(sys, "x*y")) == E(sys, "q^2*y"));
  auto t = sys.transport(x, E(sys, "y"));
  REQUIRE(t.size() == 1);
  CHECK(t.at(x) == E(sys, "q*y"));
  auto t1 = sys.transport(x, E(sys, "1"));
  REQUIRE(t1.size() == 1);
  CHECK(t1.at(x) == E(sys, "1"));
  auto t2 = sys.transport(y, E(sys, "x"));
  REQUIRE(t2.size() == 1);
  CHECK(t2.at(y) == E(sys, "q*x"));
  CHECK_THROWS_AS(sys.derivative_action(x, E(sys, "d(x)")), std::invalid_argument);

  const auto& o = orth3();
  int minus = *o.alphabet().rank_of("x-");
  CHECK(o.derivative_action(minus, E(o, "x+")).is_zero());
}

TEST_CASE("three-dimensional coordinate relations") {
  const auto& sys = orth3();
  CHECK(sys.normal_form(E(sys, "x+*x-")) == E(sys, "x-*x+ + (s^-1 - s)*x0*x0"));
  CHECK(sys.normal_form(E(sys, "x+*x0")) == E(sys, "q*x0*x+"));
  CHECK(sys.normal_form(E(sys, "x0*x-")) == E(sys, "q*x-*x0"));
  CHECK(sys.rules("coord").size() == 3);
}

TEST_CASE("centrality") {
  const auto& o = orth3();
  auto r2 = E(o, "s^-1*x+*x- + x0*x0 + s*x-*x+");
  CHECK(o.is_central(r2));
  CHECK_FALSE(gl2().is_central(E(gl2(), "x")));
  CHECK(gl2().is_central(E(gl2(), "1")));
}

TEST_CASE("confluence") {
  auto rep = gl2().confluence_selftest(200, 5, 1);
  CHECK(rep.passed());
  CHECK(rep.samples == 200);
  CHECK(rep.overlaps == 216);
  auto rep3 = orth3().confluence_selftest(60, 4, 2);
  CHECK(rep3.passed());

  auto broken = build_rewrite_system(qtest::gl2_data());
  int x = 0, y = 1;
  Generator gy{Kind::Coord, static_cast<std::uint8_t>(y)}, gx{Kind::Coord, static_cast<std::uint8_t>(x)};
  broken.override_rule(gy, gx, E(broken, "q^-1*x*y + q^-2*x*y"));
  CHECK_FALSE(broken.confluence_selftest(50, 4, 3).passed());
}

TEST_CASE("normal form is idempotent and multiplication associative") {
  const auto& sys = orth3();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> letter(0, 8), len(0, 3), coef(-3, 3);
  auto rand_elem = [&]() {
    AlgebraElement e;
    for (int t = 0; t < 2; ++t) {
      Word w;
      int l = len(rng);
      for (int p = 0; p < l; ++p) {
        int c = letter(rng);
        w.push_back({static_cast<Kind>(c / 3), static_cast<std::uint8_t>(c % 3)});
      }
      e.add(w, Scalar(coef(rng)) * Scalar::s().pow(coef(rng)));
    }
    return e;
  };
  for (int k = 0; k < 15; ++k) {
    auto a = rand_elem(), b = rand_elem(), c = rand_elem();
    auto na = sys.normal_form(a);
    REQUIRE(sys.normal_form(na) == na);
    REQUIRE(sys.is_normal(na));
    REQUIRE(sys.multiply(sys.multiply(a, b), c) == sys.multiply(a, sys.multiply(b, c)));
  }
}

TEST_CASE("commutative limit") {
  Specialization one(GaussRational(1));
  auto data = qtest::orth3_data();
  for (auto* m : {&data.b, &data.c, &data.d, &data.f}) *m = specialize(*m, one);
  auto sys = build_rewrite_system(data);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      auto ga = sys.x(a), gb = sys.x(b);
      CHECK(sys.normal_form(concat(ga, gb) - concat(gb, ga)).is_zero());
    }
  }
}

TEST_CASE("element text round trip") {
  const auto& sys = orth3();
  auto e = sys.normal_form(E(sys, "D(x0)*x+*x- - 2/3*d(x-)*x0 + i*rho"));
  auto text = sys.to_string(e);
  CHECK(sys.parse(text) == e);
  CHECK(gl2().to_string(E(gl2(), "D(x)*x")) == "D(x)*x");
  CHECK(gl2().to_string(gl2().normal_form(E(gl2(), "D(x)*x"))) == "1 + s^4*x*D(x) + (s^4 - 1)*y*D(y)");
  CHECK_THROWS_AS(sys.parse("x+ * (x0"), ParseError);
  CHECK_THROWS_AS(sys.parse("d(z)"), ParseError);
  CHECK_THROWS_AS(sys.parse("x0 / x+"), ParseError);
}

TEST_CASE("derivative exchange conventions") {
  auto survivors = [](const CalculusData& data) {
    std::vector<DerivConvention> out;
    for (const auto& t : select_deriv_conventions(data)) {
      if (t.survives()) out.push_back(t.convention);
    }
    return out;
  };
  std::vector<DerivConvention> expected{DerivConvention::right_lk, DerivConvention::left_lk};
  CHECK(survivors(qtest::gl2_data()) == expected);
  CHECK(survivors(qtest::orth3_data()) == expected);

  auto data = qtest::gl2_data();
  data.deriv_convention = DerivConvention::right_lk;
  auto sys = build_rewrite_system(data);
  CHECK(sys.rules("deriv-deriv").size() == 1);
  CHECK(sys.confluence_selftest(100, 4, 9).passed());
}
