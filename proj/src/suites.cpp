#include "qplane/suites.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace qplane {

const char* version() { return "0.1.0"; }

std::size_t Report::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
}

int Report::exit_code(bool strict) const {
  if (count(CheckStatus::fail) > 0) return 1;
  if (strict && count(CheckStatus::finding) > 0) return 1;
  return 0;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ybe", "wz", "gamma", "relations", "closedness", "hamiltonian"};
  return names;
}

namespace {

CheckStatus verdict(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

std::string field_text(const VectorField& x, const RewriteSystem& sys) {
  return x.is_zero() ? "0" : sys.to_string(x.to_element());
}

/// Runs `body`, turning engine exceptions into a failed check.
void guarded(std::vector<Check>& out, const std::string& name, const std::function<Check()>& body) {
  try {
    out.push_back(body());
  } catch (const std::exception& e) {
    out.push_back({name, CheckStatus::fail, std::string("error: ") + e.what()});
  }
}

void ybe_suite(const PlaneSpec& spec, std::vector<Check>& out) {
  const auto& r = spec.r_matrix;
  out.push_back({"ybe: Yang-Baxter equation R12 R23 R12 = R23 R12 R23", verdict(check_ybe(r)), ""});
  auto factor = [](const Scalar& l) {
    return l.prints_negative() ? "(R + " + (-l).to_string() + ")" : "(R - " + l.to_string() + ")";
  };
  std::vector<Scalar> ev{spec.eigenvalues.lambda1, spec.eigenvalues.lambda2};
  std::string factors = factor(ev[0]) + factor(ev[1]);
  if (spec.family == Family::B) {
    ev.insert(ev.begin(), *spec.eigenvalues.lambda0);
    factors = factor(ev[0]) + factors;
    auto q = projector_q(r, ev[0], ev[1], ev[2]);
    out.push_back({"ybe: projector Q Q = Q", verdict(q * q == q), ""});
  }
  out.push_back({"ybe: minimal polynomial " + factors + " = 0", verdict(check_min_poly(r, ev)), ""});
}

void wz_suite(const PlaneSpec& spec, std::vector<Check>& out) {
  if (spec.d.size() == 0) {
    out.push_back({"wz: C = qR invertible", CheckStatus::fail, "C is singular"});
    return;
  }
  out.push_back({"wz: C = qR invertible", CheckStatus::pass, ""});
  auto rep = wz_conditions(spec.b, spec.c, spec.d, spec.f);
  int k = 0;
  for (const auto& c : rep.conditions) {
    ++k;
    std::string detail;
    if (c.status() != CheckStatus::pass) {
      detail = c.reason;
      if (!c.corrected_statement.empty()) detail += "; corrected reading " + c.corrected_statement;
    }
    out.push_back({"wz: condition " + std::to_string(k) + ": " + c.statement, c.status(), detail});
  }
}

void gamma_suite(const Plane& p, std::vector<Check>& out) {
  const auto& spec = p.spec;
  std::string listing;
  for (const auto& g : p.gamma_candidates) {
    if (!listing.empty()) listing += "; ";
    listing += g.name + (g.passes() ? " passes" : g.check.exterior_relation ? " fails the Yang-Baxter equation"
                                                                             : " fails (D + E)(E - Gamma) = 0");
  }
  if (spec.gamma_policy == GammaPolicy::automatic) {
    bool needed = spec.symplectic.has_value();
    std::string detail = listing + (p.gamma ? "; selected " + p.gamma->name : "; none admissible at this q");
    out.push_back({"gamma: automatic selection", verdict(!needed || p.gamma), detail});
  } else {
    for (const auto& g : p.gamma_candidates) {
      out.push_back({"gamma: Gamma = " + g.name + " satisfies (D + E)(E - Gamma) = 0 and the Yang-Baxter equation",
                     verdict(g.passes()), ""});
    }
  }
  if (p.gamma && spec.family == Family::B) {
    const auto& g = p.gamma->matrix;
    out.push_back({"gamma: selected Gamma squares to E", verdict(g * g == LegMatrix::identity(spec.dimension)),
                   p.gamma->name});
  }
}

void relations_suite(const Plane& p, const FixtureSet& fx, const SuiteOptions& opt, std::vector<Check>& out) {
  const auto& sys = p.sys();
  auto rep = verify_reference_relations(p, fx);
  std::map<std::string, const RelationDiff*> bad;
  for (const auto& m : rep.mismatches) bad[m.fixture] = &m;
  for (const auto& r : fx.relations) {
    auto it = bad.find(r.name);
    if (it == bad.end()) out.push_back({"relations: " + r.name, CheckStatus::pass, ""});
    else out.push_back({"relations: " + r.name, it->second->status, it->second->detail});
  }
  if (fx.d_table) {
    CheckStatus st = CheckStatus::pass;
    std::string detail;
    for (const auto& m : rep.mismatches) {
      if (m.fixture.rfind(fx.d_table->name, 0) != 0) continue;
      if (st != CheckStatus::fail) st = m.status;
      detail += (detail.empty() ? "" : "; ") + m.fixture.substr(fx.d_table->name.size() + 1) + ": " + m.detail;
    }
    if (detail.empty()) detail = "all entries agree";
    out.push_back({"relations: " + fx.d_table->name, st, detail});
  }

  guarded(out, "relations: confluence on all length-3 overlap words", [&] {
    auto c = sys.overlap_test({Kind::Coord, Kind::Diff, Kind::Deriv});
    return Check{"relations: confluence on all length-3 overlap words", verdict(c.passed()),
                 std::to_string(c.overlaps) + " overlaps, " + std::to_string(c.mismatches.size()) + " mismatches"};
  });
  const std::string random_name = "relations: confluence on " + std::to_string(opt.samples) +
                                  " random words of length <= " + std::to_string(opt.word_length) +
                                  ", leftmost and rightmost reduction";
  guarded(out, random_name, [&] {
    auto c = sys.confluence_selftest(opt.samples, opt.word_length, opt.seed);
    return Check{random_name, verdict(c.passed()),
                 "seed " + std::to_string(opt.seed) + ", " + std::to_string(c.mismatches.size()) + " mismatches"};
  });

  if (!p.spec.specialization) {
    guarded(out, "relations: coordinates commute at q = 1", [&] {
      auto c = coordinate_commutators(p.spec, Specialization(GaussRational(1)));
      std::string detail;
      for (const auto& s : c) detail += (detail.empty() ? "" : "; ") + s;
      return Check{"relations: coordinates commute at q = 1", verdict(c.empty()), detail};
    });
  }

  if (p.spec.quotient) {
    const auto& qs = *p.spec.quotient;
    guarded(out, "relations: central element commutes with the coordinates at generic q", [&] {
      bool central = p.generic->is_central(p.generic->normal_form(*p.central));
      return Check{"relations: central element commutes with the coordinates at generic q", verdict(central),
                   qs.central};
    });
    const auto& rule = sys.quotient_rule();
    std::string lhs = rule ? sys.alphabet().word_string({rule->first, rule->second}) : "?";
    out.push_back({"relations: quotient rule from " + qs.central + " = " + qs.symbol, verdict(rule.has_value()),
                   rule ? lhs + " -> " + sys.to_string(rule->rhs) : "no rule"});
    if (fx.conormal_combination && p.d_central) {
      const std::string name = "relations: d(" + qs.central + ") is a multiple of " + *fx.conormal_combination;
      guarded(out, name, [&] {
        const auto& g = *p.generic;
        auto c = proportionality(p.d_central->body(), g.normal_form(g.parse(*fx.conormal_combination)));
        return Check{name, verdict(c.has_value()),
                     c ? "constant " + c->to_string() : "d(central) = " + g.to_string(p.d_central->body())};
      });
    }
  }
}

void closedness_suite(const Plane& p, std::vector<Check>& out) {
  if (!p.spec.symplectic) {
    out.push_back({"closedness: no symplectic form declared", CheckStatus::pass, ""});
    return;
  }
  const std::string name = "closedness: d omega = 0 for omega = " + p.spec.symplectic->form;
  if (!p.omega) {
    out.push_back({name, CheckStatus::fail, p.omega_error});
    return;
  }
  guarded(out, name, [&] {
    auto dw = d_form(p.omega->wedge, p.sys());
    bool closed = is_closed(*p.omega, p.sys());
    return Check{name, verdict(closed), closed ? "" : "d omega = " + p.sys().to_string(dw.body())};
  });
}

AlgebraElement nf_text(const Plane& p, const std::string& text) { return p.sys().normal_form(p.sys().parse(text)); }

void hamiltonian_suite(const Plane& p, const FixtureSet& fx, const SuiteOptions& opt, std::vector<Check>& out) {
  if (!p.spec.symplectic) {
    out.push_back({"hamiltonian: no symplectic form declared", CheckStatus::pass, ""});
    return;
  }
  if (!p.omega) {
    out.push_back({"hamiltonian: symplectic form available", CheckStatus::fail, p.omega_error});
    return;
  }
  const auto& sys = p.sys();
  const auto& w = *p.omega;
  const auto& al = sys.alphabet();
  const std::string deg = std::to_string(opt.degree);

  for (const auto& t : fx.tensors) {
    guarded(out, "hamiltonian: " + t.name, [&] {
      TensorForm expected(2);
      for (const auto& [coord, slots, coeff] : t.terms) {
        TensorForm::Key k;
        for (const auto& [word, c] : sys.parse(coord.empty() ? "1" : coord).terms()) k.coord = word;
        for (const auto& s : slots) k.slots.push_back(*al.rank_of(s));
        Scalar v = parse_scalar(coeff, sys.aux_symbols());
        expected.add(k, p.spec.specialization ? v.specialize(*p.spec.specialization) : v);
      }
      auto got = to_tensor(WedgeForm::make(sys.parse(t.wedge), sys), w.gamma, sys);
      return Check{"hamiltonian: " + t.name, verdict(got == expected), got.to_string(al)};
    });
  }

  const std::string nd_name = "hamiltonian: omega nondegenerate up to degree " + deg;
  guarded(out, nd_name, [&] {
    FieldConstraint tangent;
    if (p.central) tangent = [&](const VectorField& x) { return p.tangency(x); };
    auto nd = is_nondegenerate(w, sys, opt.degree, tangent);
    if (nd.nondegenerate) return Check{nd_name, CheckStatus::pass, ""};
    return Check{nd_name, fx.degenerate_finding ? CheckStatus::finding : CheckStatus::fail,
                 "kernel field " + field_text(*nd.witness, sys)};
  });

  for (int r = 0; r < sys.dim(); ++r) {
    const std::string& g = al.name_of_rank(r);
    const std::string name = "hamiltonian: solve X ⌟ omega = -df for f = " + g;
    guarded(out, name, [&] {
      auto rep = hamiltonian_vector_field(sys.x(r), w, sys, opt.degree);
      if (rep.status == SolveStatus::none) return Check{name, CheckStatus::fail, "no solution up to degree " + deg};
      std::string detail = to_string(rep.status) + ": " + field_text(rep.particular, sys);
      if (rep.status == SolveStatus::family) {
        detail += " + span of " + std::to_string(rep.kernel.size()) + " kernel field(s)";
        if (rep.gauge_applied) detail += ", gauge X_f(f) = 0";
      }
      return Check{name, verdict(rep.residual_ok), detail};
    });
  }

  for (const auto& f : fx.fields) {
    const std::string name = "hamiltonian: " + f.name;
    guarded(out, name, [&] {
      auto rep = hamiltonian_vector_field(sys.parse(f.function), w, sys, opt.degree);
      auto x = VectorField::from_element(nf_text(p, f.field));
      bool ok = f.exact ? rep.status == SolveStatus::unique && rep.particular == x : rep.contains(x);
      return Check{name, verdict(ok),
                   to_string(rep.status) + (f.exact ? ", solution " : ", contains printed field; particular ") +
                       field_text(rep.particular, sys)};
    });
  }

  for (const auto& b : fx.brackets) {
    const std::string name = "hamiltonian: bracket " + b.name;
    guarded(out, name, [&] {
      auto v = poisson_bracket_report(sys.parse(b.f), sys.parse(b.g), w, sys, opt.degree);
      std::string detail = sys.to_string(v.value);
      if (v.non_unique) detail += " (X_f not unique; canonical particular solution)";
      return Check{name, verdict(v.value == nf_text(p, b.value)), detail};
    });
  }

  for (const auto& a : fx.asymmetries) {
    const std::string name = "hamiltonian: bracket " + a.name;
    guarded(out, name, [&] {
      auto fg = poisson_bracket(sys.parse(a.f), sys.parse(a.g), w, sys, opt.degree);
      auto gf = poisson_bracket(sys.parse(a.g), sys.parse(a.f), w, sys, opt.degree);
      Scalar factor = parse_scalar(a.factor, sys.aux_symbols());
      return Check{name, verdict(fg.scaled(factor) == -gf), ""};
    });
  }

  for (const auto& m : fx.motions) {
    const std::string name = "hamiltonian: equations of motion " + m.name;
    guarded(out, name, [&] {
      auto eom = equations_of_motion(sys.parse(m.hamiltonian), w, sys, opt.degree);
      bool ok = true;
      std::string detail;
      for (const auto& [gen, value] : m.rates) {
        const auto& got = eom.at(*al.rank_of(gen));
        ok = ok && got == nf_text(p, value);
        detail += (detail.empty() ? "" : ", ") + gen + "' = " + sys.to_string(got);
      }
      return Check{name, verdict(ok), detail};
    });
  }
}

}  // namespace

Report run_suite(const PlaneSpec& spec, const std::string& suite, const SuiteOptions& options) {
  const auto& names = suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown suite \"" + suite + "\"");
  }
  auto wanted = [&](const char* s) { return suite == "all" || suite == s; };
  Report rep;
  rep.plane = spec.name;
  rep.suite = suite;
  auto& out = rep.checks;

  if (wanted("ybe")) ybe_suite(spec, out);
  if (wanted("wz")) wz_suite(spec, out);

  const bool needs_plane = wanted("gamma") || wanted("relations") || wanted("closedness") || wanted("hamiltonian");
  if (needs_plane) {
    std::optional<Plane> plane;
    std::string why;
    if (!validate_plane(spec).empty()) {
      why = "skipped: the plane failed validation";
    } else {
      try {
        plane = build_plane(spec, options.max_degree);
      } catch (const std::exception& e) {
        why = std::string("error: ") + e.what();
      }
    }
    const FixtureSet fx = builtin_fixtures(spec.name);
    for (const char* s : {"gamma", "relations", "closedness", "hamiltonian"}) {
      if (!wanted(s)) continue;
      if (!plane) {
        out.push_back({std::string(s) + ": calculus", CheckStatus::fail, why});
        continue;
      }
      const std::string sn = s;
      if (sn == "gamma") gamma_suite(*plane, out);
      else if (sn == "relations") relations_suite(*plane, fx, options, out);
      else if (sn == "closedness") closedness_suite(*plane, out);
      else hamiltonian_suite(*plane, fx, options, out);
    }
  }
  std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return rep;
}

std::string report_json(const Report& report) {
  nlohmann::json doc;
  doc["tool"] = "qplane";
  doc["version"] = version();
  doc["plane"] = report.plane;
  doc["suite"] = report.suite;
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    doc["checks"].push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  }
  doc["summary"] = {{"pass", report.count(CheckStatus::pass)},
                    {"finding", report.count(CheckStatus::finding)},
                    {"fail", report.count(CheckStatus::fail)}};
  return doc.dump(2) + "\n";
}

std::string report_text(const Report& report) {
  std::string out = "qplane " + std::string(version()) + ": plane " + report.plane + ", suite " + report.suite + "\n";
  for (const auto& c : report.checks) {
    std::string tag = to_string(c.status);
    std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return std::toupper(ch); });
    tag.resize(8, ' ');
    out += tag + c.name;
    if (!c.detail.empty()) out += "\n        " + c.detail;
    out += "\n";
  }
  out += std::to_string(report.count(CheckStatus::pass)) + " pass, " +
         std::to_string(report.count(CheckStatus::finding)) + " finding, " +
         std::to_string(report.count(CheckStatus::fail)) + " fail\n";
  return out;
}

}  // namespace qplane
