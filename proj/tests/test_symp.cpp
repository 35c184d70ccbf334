#include "doctest.h"
#include "matrices.hpp"
#include "qplane/symp.hpp"

using namespace qplane;

namespace {

Scalar P(const std::string& s) { return parse_scalar(s); }

const RewriteSystem& gl2() {
  static const RewriteSystem sys = build_rewrite_system(qtest::gl2_data());
  return sys;
}

const SymplecticForm& omega_2d() {
  static const SymplecticForm w = [] {
    const auto& sys = gl2();
    auto gamma = P("q^-1") * qtest::r_gl2();
    return SymplecticForm::make(WedgeForm::make(sys.parse("d(x)*d(y)"), sys), Scalar(1), gamma, sys);
  }();
  return w;
}

VectorField field(const std::string& text) { return VectorField::from_element(gl2().parse(text)); }

}  // namespace

TEST_CASE("closedness") {
  const auto& sys = gl2();
  CHECK(is_closed(omega_2d(), sys));
  // Every 2-form on the plane is closed; the one-form x η is not: d(x η) = ξ∧η.
  auto gamma = P("q^-1") * qtest::r_gl2();
  auto w = SymplecticForm::make(WedgeForm::make(sys.parse("x*y*d(x)*d(y)"), sys), Scalar(1), gamma, sys);
  CHECK(is_closed(w, sys));
  CHECK(d_form(WedgeForm::make(sys.parse("x*d(y)"), sys), sys) == WedgeForm::make(sys.parse("d(x)*d(y)"), sys));
}

TEST_CASE("nondegeneracy on the plane") {
  const auto& sys = gl2();
  CHECK(is_nondegenerate(omega_2d(), sys, 0).nondegenerate);
  CHECK(is_nondegenerate(omega_2d(), sys, 1).nondegenerate);
  auto zero = SymplecticForm::make(WedgeForm::zero(2), Scalar(1), omega_2d().gamma, sys);
  auto rep = is_nondegenerate(zero, sys, 0);
  CHECK_FALSE(rep.nondegenerate);
  REQUIRE(rep.witness);
  CHECK_FALSE(rep.witness->is_zero());
}

TEST_CASE("Hamiltonian vector fields of the coordinates") {
  const auto& sys = gl2();
  auto xx = hamiltonian_vector_field(sys.parse("x"), omega_2d(), sys);
  CHECK(xx.status == SolveStatus::unique);
  CHECK(xx.particular == field("q*D(y)"));
  CHECK(xx.residual_ok);
  auto xy = hamiltonian_vector_field(sys.parse("y"), omega_2d(), sys);
  CHECK(xy.status == SolveStatus::unique);
  CHECK(xy.particular == field("-q^2*D(x)"));
  CHECK(xy.residual_ok);
}

TEST_CASE("Hamiltonian solver is linear in f") {
  const auto& sys = gl2();
  auto a = hamiltonian_vector_field(sys.parse("x*y"), omega_2d(), sys, 1);
  auto b = hamiltonian_vector_field(sys.parse("(q + 3)*x*y"), omega_2d(), sys, 1);
  REQUIRE(a.status == SolveStatus::unique);
  REQUIRE(b.status == SolveStatus::unique);
  CHECK(b.particular == a.particular.scaled(P("q + 3")));
  CHECK(a.residual_ok);
}

TEST_CASE("degree bound too small gives no solution") {
  const auto& sys = gl2();
  auto rep = hamiltonian_vector_field(sys.parse("x*x*y"), omega_2d(), sys, 0);
  CHECK(rep.status == SolveStatus::none);
  CHECK_THROWS_AS(poisson_bracket(sys.parse("x*x*y"), sys.parse("x"), omega_2d(), sys, 0), NoHamiltonianError);
}

TEST_CASE("Poisson brackets on the plane") {
  const auto& sys = gl2();
  auto xy = poisson_bracket(sys.parse("x"), sys.parse("y"), omega_2d(), sys);
  auto yx = poisson_bracket(sys.parse("y"), sys.parse("x"), omega_2d(), sys);
  CHECK(xy == sys.parse("-q"));
  CHECK(yx == sys.parse("q^2"));
  CHECK(xy.scaled(P("q")) == -yx);
  CHECK(poisson_bracket(sys.parse("y"), sys.parse("y"), omega_2d(), sys).is_zero());
}

TEST_CASE("equations of motion") {
  const auto& sys = gl2();
  auto eom = equations_of_motion(sys.parse("y"), omega_2d(), sys);
  CHECK(eom.at(0) == sys.parse("-q"));
  CHECK(eom.at(1).is_zero());
  for (const auto& [r, v] : equations_of_motion(sys.parse("1"), omega_2d(), sys)) CHECK(v.is_zero());
}
