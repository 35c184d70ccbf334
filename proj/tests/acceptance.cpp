// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Optional argv[1]: path to the qplane executable, used to repeat the
// determinism check through the command line.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

#include "matrices.hpp"
#include "random_elements.hpp"
#include "qplane/suites.hpp"

using namespace qplane;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects sub-check failures for one criterion.
struct Tally {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

int failed_criteria = 0;

void criterion(int n, const std::string& title, const std::function<void(Tally&)>& body) {
  Tally t;
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  bool ok = t.failures.empty();
  if (!ok) ++failed_criteria;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << n << ". " << title << "\n";
  for (const auto& s : t.notes) std::cout << "         " << s << "\n";
  for (const auto& s : t.failures) std::cout << "         failed: " << s << "\n";
}

Scalar P(const std::string& s) { return parse_scalar(s); }

const Plane& plane(const std::string& name) {
  static std::map<std::string, Plane> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_plane(builtin_plane(name))).first;
  return it->second;
}

AlgebraElement E(const Plane& p, const std::string& text) { return p.sys().parse(text); }
VectorField field(const Plane& p, const std::string& text) { return VectorField::from_element(E(p, text)); }

std::string run_cli(const std::string& exe, const std::string& plane_name, int& status) {
  std::string cmd = "\"" + exe + "\" verify --suite all --format json --plane " + plane_name;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  criterion(1, "Yang-Baxter equation holds for both R-matrices and fails for 10 single-entry corruptions", [](Tally& t) {
    auto t0 = Clock::now();
    const LegMatrix rs[] = {qtest::r_gl2(), qtest::r_orth3()};
    t.expect(check_ybe(rs[0]), "gl2 R-matrix");
    t.expect(check_ybe(rs[1]), "orth3 R-matrix");
    // Five positions per plane, alternating nonzero and zero entries.
    const std::array<std::array<int, 2>, 5> pos2{{{0, 0}, {1, 1}, {1, 2}, {3, 3}, {0, 3}}};
    const std::array<std::array<int, 2>, 5> pos3{{{0, 0}, {1, 3}, {2, 4}, {4, 4}, {6, 2}}};
    int rejected = 0;
    for (int plane_idx = 0; plane_idx < 2; ++plane_idx) {
      for (const auto& [row, col] : plane_idx == 0 ? pos2 : pos3) {
        LegMatrix bad = rs[plane_idx];
        bad.at(row, col) = bad.at(row, col) + Scalar(1);
        bool caught = !check_ybe(bad);
        rejected += caught;
        t.expect(caught, std::string(plane_idx == 0 ? "gl2" : "orth3") + " corruption at (" + std::to_string(row) +
                             ", " + std::to_string(col) + ") not rejected");
      }
    }
    double secs = seconds_since(t0);
    t.note(std::to_string(rejected) + "/10 corruptions rejected in " + std::to_string(secs) + " s");
    t.expect(secs < 5.0, "runtime above 5 s");
  });

  criterion(2, "minimal polynomials of both R-matrices and the idempotent projector Q", [](Tally& t) {
    t.expect(check_min_poly(qtest::r_gl2(), {Scalar::q(), -Scalar::q().inverse()}), "(R - q)(R + q^-1) = 0 on gl2");
    auto r3 = qtest::r_orth3();
    t.expect(check_min_poly(r3, {Scalar::q(), -Scalar::q().inverse(), P("q^-2")}),
             "(R - q)(R + q^-1)(R - q^-2) = 0 on orth3");
    t.expect(!check_min_poly(r3, {Scalar::q(), -Scalar::q().inverse()}), "quadratic alone must not annihilate orth3");
    auto q = projector_q(r3, P("q^-2"), P("-q^-1"), Scalar::q());
    t.expect(q * q == q, "Q Q = Q");
    t.expect(!q.is_zero(), "Q nonzero");
  });

  criterion(3, "consistency conditions for the calculus matrices and the D table", [](Tally& t) {
    for (const auto& name : {"gl2", "orth3"}) {
      auto spec = builtin_plane(name);
      auto rep = wz_conditions(spec.b, spec.c, spec.d, spec.f);
      t.expect(rep.conditions.size() == 5, std::string(name) + ": five conditions");
      int k = 0;
      for (const auto& c : rep.conditions) {
        ++k;
        t.expect(c.status() != CheckStatus::fail, std::string(name) + " condition " + std::to_string(k) + " fails");
        if (c.status() == CheckStatus::finding) {
          t.note(std::string(name) + " condition " + std::to_string(k) + " holds in the corrected reading " +
                 c.corrected_statement);
        }
      }
      // D by elimination against D by the minimal polynomial.
      t.expect(Scalar::q().inverse() * inverse_via_min_poly(spec.r_matrix, spec.eigenvalues, spec.family) == spec.d,
               std::string(name) + ": two routes to D disagree");
    }
    auto fx = builtin_fixtures("orth3");
    t.expect(fx.d_table.has_value(), "orth3 D table fixture present");
    auto rep = verify_reference_relations(plane("orth3"), fx);
    int typos = 0;
    for (const auto& m : rep.mismatches) {
      if (m.fixture.rfind(fx.d_table->name, 0) != 0) continue;
      ++typos;
      t.expect(m.status == CheckStatus::finding, "D table entry unconfirmed: " + m.fixture + " " + m.detail);
      t.note("typo: " + m.fixture + " " + m.detail);
    }
    t.note("D table: 81 entries, " + std::to_string(typos) + " typos");
  });

  criterion(4, "derived relations match the printed relations; coordinates commute at q = 1", [](Tally& t) {
    for (const auto& name : {"gl2", "orth3"}) {
      auto fx = builtin_fixtures(name);
      auto rep = verify_reference_relations(plane(name), fx);
      std::size_t relation_mismatches = 0;
      for (const auto& m : rep.mismatches) {
        if (fx.d_table && m.fixture.rfind(fx.d_table->name, 0) == 0) continue;
        ++relation_mismatches;
        t.expect(m.status == CheckStatus::finding, std::string(name) + ": " + m.fixture + " " + m.detail);
        t.note(std::string(name) + " finding: " + m.fixture + " " + m.detail);
      }
      t.note(std::string(name) + ": " + std::to_string(fx.relations.size()) + " relations, " +
             std::to_string(relation_mismatches) + " mismatches");
      t.expect(!fx.relations.empty(), std::string(name) + ": no relation fixtures");
    }
    Specialization one(GaussRational(1));
    for (const auto& name : {"gl2", "orth3"}) {
      auto c = coordinate_commutators(builtin_plane(name), one);
      t.expect(c.empty(), std::string(name) + ": nonzero commutator at q = 1");
    }
  });

  criterion(5, "Gamma candidates: R/q on gl2, D or R^-1 on the sphere at q = -1 with D D = E, none at generic q",
            [](Tally& t) {
              auto gl2 = resolve_gamma(builtin_plane("gl2"));
              t.expect(gl2.size() == 1 && gl2[0].name == "r_over_q" && gl2[0].passes(), "R/q on gl2");
              for (const auto& g : resolve_gamma(builtin_plane("orth3"))) {
                t.expect(!g.passes(), "generic orth3 candidate " + g.name + " should fail");
              }
              bool any = false;
              for (const auto& g : resolve_gamma(builtin_plane("sphere_qm1"))) {
                if (!g.passes()) continue;
                any = true;
                t.note("passing at q = -1: " + g.name);
                t.expect(g.matrix * g.matrix == LegMatrix::identity(3), g.name + " squared is not E");
              }
              t.expect(any, "no candidate passes at q = -1");
            });

  criterion(6, "2D symplectic suite: tensor of the wedge, Hamiltonian fields, brackets, residual", [](Tally& t) {
    const auto& p = plane("gl2");
    const auto& sys = p.sys();
    if (!p.omega || !p.gamma) {
      t.expect(false, "gl2 has no symplectic form");
      return;
    }
    const int x = *sys.alphabet().rank_of("x"), y = *sys.alphabet().rank_of("y");
    TensorForm expected(2);
    expected.add({{}, {x, y}}, P("q^-2"));
    expected.add({{}, {y, x}}, P("-q^-1"));
    auto tensor = to_tensor(WedgeForm::make(E(p, "d(x)*d(y)"), sys), p.gamma->matrix, sys);
    t.expect(tensor == expected, "d(x)^d(y) -> q^-2 dx⊗dy - q^-1 dy⊗dx, got " + tensor.to_string(sys.alphabet()));
    const std::pair<const char*, const char*> fields[] = {{"x", "q*D(y)"}, {"y", "-q^2*D(x)"}};
    for (const auto& [f, xf] : fields) {
      auto rep = hamiltonian_vector_field(E(p, f), *p.omega, sys, 1);
      t.expect(rep.status == SolveStatus::unique, std::string("X_") + f + " not unique");
      t.expect(rep.particular == field(p, xf), std::string("X_") + f + " = " + xf);
      t.expect(rep.residual_ok, std::string("residual for ") + f);
      t.expect(hamiltonian_residual(rep.particular, E(p, f), *p.omega, sys).is_zero(),
               std::string("X⌟omega + df = 0 for ") + f);
    }
    auto xy = poisson_bracket(E(p, "x"), E(p, "y"), *p.omega, sys, 1);
    auto yx = poisson_bracket(E(p, "y"), E(p, "x"), *p.omega, sys, 1);
    t.expect(xy == E(p, "-q"), "[x, y] = -q");
    t.expect(xy.scaled(Scalar::q()) == -yx, "q [x, y] = -[y, x]");
  });

  criterion(7, "sphere at q = -1: central radius, its differential, closed form, fields, brackets, motion",
            [](Tally& t) {
              const auto& p = plane("sphere_qm1");
              const auto& sys = p.sys();
              t.expect(p.generic && p.central && p.generic->is_central(p.generic->normal_form(*p.central)),
                       "radius element central at generic q");
              auto fx = builtin_fixtures("sphere_qm1");
              if (p.d_central && fx.conormal_combination) {
                const auto& g = *p.generic;
                auto c = proportionality(p.d_central->body(), g.normal_form(g.parse(*fx.conormal_combination)));
                t.expect(c.has_value(), "d(radius) proportional to " + *fx.conormal_combination);
                if (c) t.note("d(radius) = (" + c->to_string() + ") * (" + *fx.conormal_combination + ")");
              } else {
                t.expect(false, "radius differential unavailable");
              }
              if (!p.omega) {
                t.expect(false, "no symplectic form: " + p.omega_error);
                return;
              }
              t.expect(is_closed(*p.omega, sys), "d omega = 0");
              const std::pair<const char*, const char*> fields[] = {
                  {"x+", "-(x+*D(x0) + i*x0*D(x-))"},
                  {"x-", "-(x-*D(x0) - i*x0*D(x+))"},
                  {"x0", "-(x-*D(x-) + x+*D(x+))"},
              };
              for (const auto& [f, xf] : fields) {
                auto rep = hamiltonian_vector_field(E(p, f), *p.omega, sys, 1);
                t.expect(rep.status != SolveStatus::none, std::string("no solution for ") + f);
                t.expect(rep.contains(field(p, xf)), std::string("solution set for ") + f + " lacks " + xf);
              }
              const std::array<std::array<const char*, 3>, 6> brackets{{
                  {"x+", "x-", "i*x0"},
                  {"x-", "x+", "-i*x0"},
                  {"x0", "x+", "x+"},
                  {"x0", "x-", "x-"},
                  {"x+", "x0", "x+"},
                  {"x-", "x0", "x-"},
              }};
              for (const auto& [f, g, v] : brackets) {
                auto got = poisson_bracket(E(p, f), E(p, g), *p.omega, sys, 1);
                t.expect(got == E(p, v), std::string("[") + f + ", " + g + "] = " + v + ", got " + sys.to_string(got));
              }
              auto eom = equations_of_motion(E(p, "x0"), *p.omega, sys, 1);
              const auto& al = sys.alphabet();
              t.expect(eom.at(*al.rank_of("x+")) == E(p, "x+"), "x+ rate");
              t.expect(eom.at(*al.rank_of("x-")) == E(p, "x-"), "x- rate");
              t.expect(eom.at(*al.rank_of("x0")).is_zero(), "x0 rate");
            });

  criterion(8, "d d f = 0 and Leibniz on 100 random functions, wedge associativity on 50 triples", [](Tally& t) {
    for (const auto& name : {"gl2", "orth3"}) {
      const auto& sys = plane(name).sys();
      std::mt19937_64 rng(2024);
      int bad_dd = 0, bad_leibniz = 0, bad_assoc = 0;
      for (int k = 0; k < 100; ++k) {
        auto f = qtest::random_function(sys, rng, 4);
        auto g = qtest::random_function(sys, rng, 4);
        bad_dd += !d_form(d_function(f, sys), sys).is_zero();
        auto lhs = d_function(sys.multiply(f, g), sys).body();
        auto rhs = sys.normal_form(concat(d_function(f, sys).body(), g) + concat(f, d_function(g, sys).body()));
        bad_leibniz += !(lhs == rhs);
      }
      for (int k = 0; k < 50; ++k) {
        auto a = qtest::random_one_form(sys, rng), b = qtest::random_one_form(sys, rng),
             c = qtest::random_one_form(sys, rng);
        bad_assoc += !(wedge(wedge(a, b, sys), c, sys) == wedge(a, wedge(b, c, sys), sys));
      }
      t.expect(bad_dd == 0, std::string(name) + ": d d f != 0 in " + std::to_string(bad_dd) + " cases");
      t.expect(bad_leibniz == 0, std::string(name) + ": Leibniz fails in " + std::to_string(bad_leibniz) + " cases");
      t.expect(bad_assoc == 0, std::string(name) + ": associativity fails in " + std::to_string(bad_assoc) + " cases");
    }
  });

  criterion(9, "confluence: 200 random words per plane under two strategies, all length-3 overlaps", [](Tally& t) {
    for (const auto& name : builtin_plane_names()) {
      const auto& sys = plane(name).sys();
      auto r = sys.confluence_selftest(200, 5, 1);
      t.expect(r.passed(), name + ": " + std::to_string(r.mismatches.size()) + " random-word mismatches");
      auto o = sys.overlap_test({Kind::Coord, Kind::Diff, Kind::Deriv});
      t.expect(o.passed(), name + ": " + std::to_string(o.mismatches.size()) + " overlap mismatches");
      t.note(name + ": " + std::to_string(o.overlaps) + " overlap words agree");
    }
  });

  criterion(10, "full verification of the built-in planes is deterministic and under 120 s", [&](Tally& t) {
    auto t0 = Clock::now();
    for (const auto& name : builtin_plane_names()) {
      auto spec = builtin_plane(name);
      auto a = report_json(run_suite(spec, "all"));
      auto b = report_json(run_suite(spec, "all"));
      t.expect(a == b, name + ": JSON reports differ between runs");
      auto rep = run_suite(spec, "all");
      t.expect(rep.exit_code(false) == 0, name + ": verification reports failures");
      t.note(name + ": " + std::to_string(rep.count(CheckStatus::pass)) + " pass, " +
             std::to_string(rep.count(CheckStatus::finding)) + " finding, " +
             std::to_string(rep.count(CheckStatus::fail)) + " fail");
    }
    if (argc > 1) {
      for (const auto& name : builtin_plane_names()) {
        int s1 = 0, s2 = 0;
        auto a = run_cli(argv[1], name, s1);
        auto b = run_cli(argv[1], name, s2);
        t.expect(s1 == 0 && s2 == 0, name + ": command line exited nonzero");
        t.expect(!a.empty() && a == b, name + ": command-line JSON differs between runs");
      }
    }
    double secs = seconds_since(t0);
    t.note("elapsed " + std::to_string(secs) + " s");
    t.expect(secs < 120.0, "runtime above 120 s");
  });

  std::cout << (failed_criteria == 0 ? "all criteria passed" : std::to_string(failed_criteria) + " criteria failed")
            << "\n";
  return failed_criteria == 0 ? 0 : 1;
}
