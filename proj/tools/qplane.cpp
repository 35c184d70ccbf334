// qplane: command-line front end over the planes/suites library.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qplane/suites.hpp"

namespace {

using namespace qplane;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Options {
  std::string plane = "gl2";
  std::string suite = "all";
  std::string format = "text";
  std::string expr, f, g;
  int degree = 1;
  int max_degree = 16;
  std::uint64_t seed = 1;
  bool strict = false;
};

std::string read_plane_document(const std::string& ref) {
  auto names = builtin_plane_names();
  if (std::find(names.begin(), names.end(), ref) != names.end()) return builtin_plane_config(ref);
  std::ifstream in(ref);
  if (!in) throw ConfigError("no built-in plane or readable file named \"" + ref + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Plane resolve_plane(const Options& o) { return build_plane(load_plane(read_plane_document(o.plane)), o.max_degree); }

void emit(const Options& o, const nlohmann::json& doc, const std::string& text) {
  if (o.format == "json") std::cout << doc.dump(2) << "\n";
  else std::cout << text;
}

const SymplecticForm& require_omega(const Plane& p) {
  if (!p.omega) {
    throw ConfigError("plane " + p.spec.name + " has no usable symplectic form" +
                      (p.omega_error.empty() ? "" : ": " + p.omega_error));
  }
  return *p.omega;
}

int cmd_verify(const Options& o) {
  auto spec = parse_plane_config(read_plane_document(o.plane));
  SuiteOptions so;
  so.degree = o.degree;
  so.seed = o.seed;
  so.max_degree = o.max_degree;
  auto rep = run_suite(spec, o.suite, so);
  std::cout << (o.format == "json" ? report_json(rep) : report_text(rep));
  return rep.exit_code(o.strict);
}

int cmd_nf(const Options& o) {
  auto p = resolve_plane(o);
  auto v = p.sys().normal_form(p.sys().parse(o.expr));
  auto text = p.sys().to_string(v);
  emit(o, {{"plane", p.spec.name}, {"input", o.expr}, {"normal_form", text}}, text + "\n");
  return kOk;
}

int cmd_bracket(const Options& o) {
  auto p = resolve_plane(o);
  const auto& sys = p.sys();
  auto v = poisson_bracket_report(sys.parse(o.f), sys.parse(o.g), require_omega(p), sys, o.degree);
  auto text = sys.to_string(v.value);
  if (v.non_unique) std::cerr << "note: X_f is not unique; the canonical particular solution was used\n";
  emit(o, {{"plane", p.spec.name}, {"f", o.f}, {"g", o.g}, {"bracket", text}, {"non_unique", v.non_unique}},
       text + "\n");
  return kOk;
}

int cmd_hamvec(const Options& o) {
  auto p = resolve_plane(o);
  const auto& sys = p.sys();
  auto rep = hamiltonian_vector_field(sys.parse(o.f), require_omega(p), sys, o.degree);
  auto show = [&](const VectorField& x) { return x.is_zero() ? std::string("0") : sys.to_string(x.to_element()); };
  nlohmann::json doc{{"plane", p.spec.name}, {"f", o.f}, {"status", to_string(rep.status)}, {"degree", o.degree}};
  if (rep.status == SolveStatus::none) {
    emit(o, doc, "no Hamiltonian vector field up to degree " + std::to_string(o.degree) + "\n");
    return kCheckFailed;
  }
  doc["particular"] = show(rep.particular);
  doc["kernel"] = nlohmann::json::array();
  std::string text = show(rep.particular) + "\n";
  if (rep.status == SolveStatus::family) {
    text += "status: family" + std::string(rep.gauge_applied ? " (gauge X_f(f) = 0)" : "") + "\n";
    for (const auto& k : rep.kernel) {
      doc["kernel"].push_back(show(k));
      text += "kernel: " + show(k) + "\n";
    }
  }
  doc["gauge_applied"] = rep.gauge_applied;
  emit(o, doc, text);
  return kOk;
}

int cmd_eom(const Options& o) {
  auto p = resolve_plane(o);
  const auto& sys = p.sys();
  auto eom = equations_of_motion(sys.parse(o.expr), require_omega(p), sys, o.degree);
  nlohmann::json rates;
  std::string text;
  for (const auto& name : p.spec.generators) {
    const auto& v = eom.at(*sys.alphabet().rank_of(name));
    rates[name] = sys.to_string(v);
    text += name + " -> " + sys.to_string(v) + "\n";
  }
  emit(o, {{"plane", p.spec.name}, {"hamiltonian", o.expr}, {"rates", rates}}, text);
  return kOk;
}

int cmd_export(const Options& o) {
  std::cout << serialize_plane(load_plane(read_plane_document(o.plane)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic engine for quantum planes"};
  app.set_version_flag("--version", std::string("qplane ") + version());
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--plane", o.plane, "built-in plane name or path to a plane configuration")->capture_default_str();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_option("--max-degree", o.max_degree, "rewrite degree cap")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto degree = [&](CLI::App* sub) {
    sub->add_option("--degree", o.degree, "vector-field ansatz degree")->check(CLI::NonNegativeNumber)->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  degree(verify);
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", o.suite, "suite to run")->check(CLI::IsMember(suites))->capture_default_str();
  verify->add_flag("--strict", o.strict, "treat findings as failures");
  verify->add_option("--seed", o.seed, "seed for random confluence sampling")->capture_default_str();

  auto* nf = app.add_subcommand("nf", "print the normal form of an element");
  common(nf);
  nf->add_option("expression", o.expr, "element expression")->required();

  auto* bracket = app.add_subcommand("bracket", "Poisson bracket [f, g] = -X_f g");
  common(bracket);
  degree(bracket);
  bracket->add_option("f", o.f)->required();
  bracket->add_option("g", o.g)->required();

  auto* hamvec = app.add_subcommand("hamvec", "Hamiltonian vector field of f");
  common(hamvec);
  degree(hamvec);
  hamvec->add_option("f", o.f)->required();

  auto* eom = app.add_subcommand("eom", "equations of motion x' = [x, H]");
  common(eom);
  degree(eom);
  eom->add_option("hamiltonian", o.expr)->required();

  auto* exp = app.add_subcommand("export", "print the canonical plane configuration");
  common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*nf) return cmd_nf(o);
    if (*bracket) return cmd_bracket(o);
    if (*hamvec) return cmd_hamvec(o);
    if (*eom) return cmd_eom(o);
    if (*exp) return cmd_export(o);
  } catch (const NoHamiltonianError& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const DegreeCapError& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const ConfigError& e) {
    std::cerr << "qplane: configuration error: " << e.what() << "\n";
    return kUsage;
  } catch (const PlaneValidationError& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "qplane: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
