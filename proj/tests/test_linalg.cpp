#include "doctest.h"
#include "matrices.hpp"

using namespace qplane;

namespace {

Scalar P(const std::string& s) { return parse_scalar(s); }
const Specialization kAtI{GaussRational(0, 1)};

struct Family {
  LegMatrix b, c, d, f;
};

Family family_a(const LegMatrix& r) {
  Family fam;
  fam.b = P("q^-1") * r;
  fam.c = P("q") * r;
  fam.d = inverse(fam.c);
  fam.f = fam.b;
  return fam;
}

Family family_b(const LegMatrix& r) {
  Family fam;
  auto q = projector_q(r, P("q^-2"), P("-q^-1"), P("q"));
  fam.c = P("q") * r;
  fam.d = inverse(fam.c);
  fam.b = LegMatrix::identity(r.base_dim()) - q;
  fam.f = fam.b;
  return fam;
}

}  // namespace

TEST_CASE("embed") {
  auto e = LegMatrix::identity(3);
  CHECK(embed(e, LegPosition::k12) == LegMatrix::identity(3, 3));
  auto r = qtest::r_gl2();
  auto r12 = embed(r, LegPosition::k12);
  // (1,1,2) in 1-based labels is composite index 1.
  CHECK(r12.at(1, 1) == Scalar::q());
  // Factors acting on disjoint legs multiply to a Kronecker product.
  Matrix a(2, 2), c(2, 2);
  a << P("q"), Scalar(1), Scalar(0), P("s^-1");
  c << Scalar(2), Scalar(0), P("1 - q"), Scalar::i();
  Matrix e2 = identity<Scalar>(2);
  LegMatrix m(2, 2, kronecker(a, e2)), n(2, 2, kronecker(e2, c));
  auto lhs = embed(m, LegPosition::k12) * embed(n, LegPosition::k23);
  CHECK(lhs.matrix() == kronecker(a, kronecker(e2, c)));
}

TEST_CASE("Yang-Baxter") {
  CHECK(check_ybe(qtest::r_gl2()));
  CHECK(check_ybe(qtest::r_orth3()));
  CHECK(check_ybe(LegMatrix::identity(2)));
  auto broken = qtest::r_gl2();
  broken(0, 0, 0, 0) = P("q + 1");
  CHECK_FALSE(check_ybe(broken));
}

TEST_CASE("minimal polynomials") {
  CHECK(check_min_poly(qtest::r_gl2(), {P("q"), P("-q^-1")}));
  CHECK_FALSE(check_min_poly(qtest::r_gl2(), {P("q")}));
  CHECK(check_min_poly(qtest::r_orth3(), {P("q^-2"), P("-q^-1"), P("q")}));
  CHECK_FALSE(check_min_poly(qtest::r_orth3(), {P("-q^-1"), P("q")}));
  CHECK(check_min_poly(LegMatrix::identity(2), {Scalar(1)}));
}

TEST_CASE("projector") {
  auto r = qtest::r_orth3();
  auto q = projector_q(r, P("q^-2"), P("-q^-1"), P("q"));
  auto e = LegMatrix::identity(3);
  CHECK(q * q == q);
  CHECK((q * (e - q)).is_zero());
  CHECK_FALSE(q.is_zero());
  CHECK_THROWS_AS(projector_q(r, P("q"), P("q"), P("-q^-1")), CoincidentEigenvaluesError);
  CHECK_THROWS_AS(inverse(q), SingularMatrixError);
}

TEST_CASE("inverse and rref") {
  auto c = P("q") * qtest::r_gl2();
  auto d = inverse(c);
  CHECK(c * d == LegMatrix::identity(2));
  CHECK(d * c == LegMatrix::identity(2));
  auto res = rref<Scalar>(identity<Scalar>(4));
  CHECK(res.rank == 4);
  CHECK(res.reduced == identity<Scalar>(4));
  CHECK(res.pivots == std::vector<Eigen::Index>{0, 1, 2, 3});

  Matrix m(2, 3);
  m << Scalar(2), Scalar(4), Scalar(6), Scalar(1), Scalar(2), P("q");
  auto rm = rref<Scalar>(m);
  CHECK(rm.rank == 2);
  CHECK(rm.pivots == std::vector<Eigen::Index>{0, 2});
  auto ns = null_space<Scalar>(m);
  REQUIRE(ns.cols() == 1);
  CHECK(is_zero_matrix<Scalar>(product<Scalar>(m, ns)));
}

TEST_CASE("rref with auxiliary symbols needs monomial pivots") {
  Matrix m(2, 2);
  m << P("rho"), Scalar(1), Scalar(1), P("rho^-1 + 1");
  auto r = rref<Scalar>(m);
  CHECK(r.rank == 2);
  Matrix bad(1, 1);
  bad << P("1 - rho");
  CHECK_THROWS_AS(rref<Scalar>(bad), std::domain_error);
}

TEST_CASE("consistency system, two-dimensional plane") {
  auto fam = family_a(qtest::r_gl2());
  auto rep = wz_conditions(fam.b, fam.c, fam.d, fam.f);
  REQUIRE(rep.conditions.size() == 5);
  CHECK(rep.all_hold());
  CHECK(rep.conditions[1].status() == CheckStatus::pass);
  CHECK(rep.conditions[2].status() == CheckStatus::pass);
  CHECK(rep.conditions[4].status() == CheckStatus::pass);
  // Conditions 1 and 4 hold only with the sign that d forces on the relations.
  CHECK(rep.conditions[0].status() == CheckStatus::finding);
  CHECK(rep.conditions[3].status() == CheckStatus::finding);
}

TEST_CASE("consistency system, three-dimensional plane") {
  auto fam = family_b(qtest::r_orth3());
  auto rep = wz_conditions(fam.b, fam.c, fam.d, fam.f);
  CHECK(rep.all_hold());
  for (const auto& c : rep.conditions) MESSAGE(c.name << ": " << to_string(c.status()));
}

TEST_CASE("identity assignment satisfies the printed system") {
  auto e = LegMatrix::identity(2);
  auto rep = wz_conditions(e, e, e, e);
  CHECK(rep.all_hold_as_printed());
}

TEST_CASE("polynomials in R commute") {
  auto r = qtest::r_gl2();
  auto fam = family_a(r);
  CHECK(fam.b * fam.c == fam.c * fam.b);
  CHECK(fam.c * fam.f == fam.f * fam.c);
  auto poly = r * r + P("s") * r;
  CHECK(poly * fam.b == fam.b * poly);
}

TEST_CASE("exterior matrix") {
  auto gl = family_a(qtest::r_gl2());
  CHECK(gamma_condition(gl.d, P("q^-1") * qtest::r_gl2()).passes());

  auto orth = family_b(qtest::r_orth3());
  CHECK_FALSE(gamma_condition(orth.d, orth.d).passes());
  CHECK_FALSE(gamma_condition(orth.d, P("q^-1") * qtest::r_orth3()).passes());

  auto d1 = specialize(orth.d, kAtI);
  auto r1 = specialize(qtest::r_orth3(), kAtI);
  auto e = LegMatrix::identity(3);
  CHECK(d1 * d1 == e);
  CHECK(r1 * r1 == e);
  CHECK(gamma_condition(d1, d1).passes());
  CHECK(d1 == P("-1") * inverse(r1));
  CHECK_FALSE(gamma_condition(d1, inverse(r1)).passes());
}
