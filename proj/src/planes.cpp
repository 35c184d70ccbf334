#include "qplane/planes.hpp"

#include <algorithm>
#include "json.hpp"

namespace qplane {

namespace detail {
extern const char* const kGl2Config;
extern const char* const kOrth3Config;
extern const char* const kSphereConfig;
}  // namespace detail

using nlohmann::json;

std::string to_string(Family f) { return f == Family::A ? "A" : "B"; }

std::string to_string(GammaPolicy p) {
  switch (p) {
    case GammaPolicy::r_over_q: return "r_over_q";
    case GammaPolicy::d: return "d";
    case GammaPolicy::r_inverse: return "r_inverse";
    case GammaPolicy::explicit_matrix: return "explicit";
    case GammaPolicy::automatic: return "auto";
  }
  return "auto";
}

Alphabet PlaneSpec::alphabet() const {
  std::vector<int> ranks;
  for (const auto& g : generators) {
    auto it = std::find(order.begin(), order.end(), g);
    ranks.push_back(static_cast<int>(it - order.begin()));
  }
  return Alphabet(generators, ranks);
}

std::set<std::string> PlaneSpec::aux_symbols() const {
  if (quotient) return {quotient->symbol};
  return {"rho"};
}

LegMatrix PlaneSpec::at_plane_q(const LegMatrix& m) const {
  return specialization ? specialize(m, *specialization) : m;
}

bool operator==(const PlaneSpec& a, const PlaneSpec& b) {
  auto sval = [](const PlaneSpec& p) { return p.specialization ? std::optional(p.specialization->s_value) : std::nullopt; };
  return a.name == b.name && a.dimension == b.dimension && a.generators == b.generators && a.order == b.order &&
         a.family == b.family && a.r_matrix == b.r_matrix && a.eigenvalues == b.eigenvalues && sval(a) == sval(b) &&
         a.gamma_policy == b.gamma_policy && a.gamma_matrix == b.gamma_matrix && a.quotient == b.quotient &&
         a.symplectic == b.symplectic;
}

PlaneValidationError::PlaneValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "plane validation failed";
        for (const auto& i : issues) msg += "; " + i.identity + (i.detail.empty() ? "" : " (" + i.detail + ")");
        return msg;
      }()),
      issues_(std::move(issues)) {}

// ---------------------------------------------------------------------------
// Configuration documents

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      schema(where, "unknown field \"" + k + "\"");
    }
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing required field \"") + key + "\"");
  return *it;
}

std::string text_of(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  schema(where, "expected a string");
}

Scalar scalar_of(const json& v, const std::string& where, const std::set<std::string>& aux) {
  try {
    return parse_scalar(text_of(v, where), aux);
  } catch (const ParseError& e) {
    schema(where, std::string(e.what()));
  } catch (const ScalarError& e) {
    schema(where, std::string(e.what()));
  }
}

LegMatrix matrix_of(const json& v, const std::string& where, int n, const std::set<std::string>& aux) {
  const auto size = static_cast<std::size_t>(n * n);
  if (!v.is_array() || v.size() != size) schema(where, "expected " + std::to_string(size) + " rows");
  Matrix m(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  for (std::size_t r = 0; r < size; ++r) {
    const auto& row = v[r];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != size) schema(rw, "expected " + std::to_string(size) + " entries");
    for (std::size_t c = 0; c < size; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          scalar_of(row[c], rw + "[" + std::to_string(c) + "]", aux);
    }
  }
  return {n, 2, std::move(m)};
}

Specialization specialization_of(const Scalar& v, const std::string& where, bool is_q) {
  if (!v.is_constant() || v.is_zero()) schema(where, "expected a nonzero constant");
  return is_q ? Specialization::from_q(v.constant()) : Specialization(v.constant());
}

void check_generator_name(const std::string& g, const std::string& where, const std::string& symbol) {
  static const std::set<std::string> reserved = {"i", "s", "q", "d", "D"};
  if (g.empty()) schema(where, "empty generator name");
  if (std::isdigit(static_cast<unsigned char>(g[0]))) schema(where, "generator names cannot start with a digit");
  for (char ch : g) {
    if (std::isspace(static_cast<unsigned char>(ch)) || std::string("*/^()").find(ch) != std::string::npos) {
      schema(where, "invalid character in generator name \"" + g + "\"");
    }
  }
  if (reserved.count(g) || g == symbol) schema(where, "generator name \"" + g + "\" is reserved");
}

}  // namespace

void derive_matrices(PlaneSpec& spec) {
  const int n = spec.dimension;
  const auto e = LegMatrix::identity(n);
  spec.c = Scalar::q() * spec.r_matrix;
  try {
    spec.d = inverse(spec.c);
  } catch (const SingularMatrixError&) {
    spec.d = LegMatrix();
  }
  if (spec.family == Family::A) {
    spec.b = Scalar::q().inverse() * spec.r_matrix;
  } else {
    try {
      spec.b = e - projector_q(spec.r_matrix, *spec.eigenvalues.lambda0, spec.eigenvalues.lambda1,
                               spec.eigenvalues.lambda2);
    } catch (const CoincidentEigenvaluesError&) {
      throw ConfigError("eigenvalues: lambda1 must differ from lambda0 and lambda2");
    }
  }
  spec.f = spec.b;
}

PlaneSpec parse_plane_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("document", "expected an object");
  allow_keys(doc, "document", {"name", "dimension", "generators", "order", "family", "r_matrix", "eigenvalues", "q",
                               "s", "gamma", "quotient", "symplectic"});
  PlaneSpec spec;
  const auto& name = require(doc, "document", "name");
  if (!name.is_string() || name.get<std::string>().empty()) schema("name", "expected a nonempty string");
  spec.name = name.get<std::string>();

  const auto& dim = require(doc, "document", "dimension");
  if (!dim.is_number_integer()) schema("dimension", "expected an integer");
  spec.dimension = dim.get<int>();
  if (spec.dimension < 1 || spec.dimension > 4) schema("dimension", "supported dimensions are 1 to 4");

  if (doc.contains("quotient")) {
    const auto& qo = doc["quotient"];
    if (!qo.is_object()) schema("quotient", "expected an object");
    allow_keys(qo, "quotient", {"central", "symbol", "conormal"});
    QuotientSpec qs;
    qs.central = text_of(require(qo, "quotient", "central"), "quotient.central");
    if (qo.contains("symbol")) qs.symbol = text_of(qo["symbol"], "quotient.symbol");
    if (qo.contains("conormal")) {
      if (!qo["conormal"].is_boolean()) schema("quotient.conormal", "expected a boolean");
      qs.conormal = qo["conormal"].get<bool>();
    }
    if (qs.symbol.empty() || !std::all_of(qs.symbol.begin(), qs.symbol.end(), [](char ch) {
          return std::isalpha(static_cast<unsigned char>(ch));
        })) {
      schema("quotient.symbol", "expected a letter name");
    }
    if (qs.symbol == "i" || qs.symbol == "s" || qs.symbol == "q") schema("quotient.symbol", "reserved name");
    spec.quotient = qs;
  }
  const auto aux = spec.aux_symbols();

  const auto& gens = require(doc, "document", "generators");
  if (!gens.is_array() || gens.size() != static_cast<std::size_t>(spec.dimension)) {
    schema("generators", "expected " + std::to_string(spec.dimension) + " names");
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string where = "generators[" + std::to_string(k) + "]";
    if (!gens[k].is_string()) schema(where, "expected a string");
    auto g = gens[k].get<std::string>();
    check_generator_name(g, where, spec.quotient ? spec.quotient->symbol : "rho");
    if (std::find(spec.generators.begin(), spec.generators.end(), g) != spec.generators.end()) {
      schema(where, "duplicate generator \"" + g + "\"");
    }
    spec.generators.push_back(g);
  }
  spec.order = spec.generators;
  if (doc.contains("order")) {
    const auto& ord = doc["order"];
    if (!ord.is_array() || ord.size() != gens.size()) schema("order", "expected a permutation of the generators");
    std::vector<std::string> o;
    for (const auto& v : ord) o.push_back(text_of(v, "order"));
    if (!std::is_permutation(o.begin(), o.end(), spec.generators.begin(), spec.generators.end())) {
      schema("order", "expected a permutation of the generators");
    }
    spec.order = o;
  }

  const auto& fam = require(doc, "document", "family");
  if (fam == "A") spec.family = Family::A;
  else if (fam == "B") spec.family = Family::B;
  else schema("family", "expected \"A\" or \"B\"");

  spec.r_matrix = matrix_of(require(doc, "document", "r_matrix"), "r_matrix", spec.dimension, aux);

  const auto& ev = require(doc, "document", "eigenvalues");
  if (!ev.is_object()) schema("eigenvalues", "expected an object");
  allow_keys(ev, "eigenvalues", {"lambda0", "lambda1", "lambda2"});
  spec.eigenvalues.lambda1 = scalar_of(require(ev, "eigenvalues", "lambda1"), "eigenvalues.lambda1", aux);
  spec.eigenvalues.lambda2 = scalar_of(require(ev, "eigenvalues", "lambda2"), "eigenvalues.lambda2", aux);
  if (spec.family == Family::B) {
    spec.eigenvalues.lambda0 = scalar_of(require(ev, "eigenvalues", "lambda0"), "eigenvalues.lambda0", aux);
  } else if (ev.contains("lambda0")) {
    schema("eigenvalues.lambda0", "only family B has a third eigenvalue");
  }

  if (doc.contains("q") && doc.contains("s")) schema("document", "give either \"q\" or \"s\", not both");
  if (doc.contains("q") && doc["q"] != "generic") {
    spec.specialization = specialization_of(scalar_of(doc["q"], "q", {}), "q", true);
  }
  if (doc.contains("s")) spec.specialization = specialization_of(scalar_of(doc["s"], "s", {}), "s", false);

  if (doc.contains("gamma")) {
    const auto& g = doc["gamma"];
    if (g.is_array()) {
      spec.gamma_policy = GammaPolicy::explicit_matrix;
      spec.gamma_matrix = matrix_of(g, "gamma", spec.dimension, aux);
    } else if (g == "r_over_q") {
      spec.gamma_policy = GammaPolicy::r_over_q;
    } else if (g == "d") {
      spec.gamma_policy = GammaPolicy::d;
    } else if (g == "r_inverse") {
      spec.gamma_policy = GammaPolicy::r_inverse;
    } else if (g == "auto") {
      spec.gamma_policy = GammaPolicy::automatic;
    } else {
      schema("gamma", "expected \"r_over_q\", \"d\", \"r_inverse\", \"auto\" or a matrix");
    }
  }

  if (doc.contains("symplectic")) {
    const auto& so = doc["symplectic"];
    if (!so.is_object()) schema("symplectic", "expected an object");
    allow_keys(so, "symplectic", {"form", "scale"});
    SymplecticSpec ss;
    ss.form = text_of(require(so, "symplectic", "form"), "symplectic.form");
    if (so.contains("scale")) ss.scale = text_of(so["scale"], "symplectic.scale");
    scalar_of(json(ss.scale), "symplectic.scale", aux);
    spec.symplectic = ss;
  }

  // Element texts must at least parse against the alphabet.
  const auto alpha = spec.alphabet();
  try {
    if (spec.quotient) {
      auto c = parse_element(spec.quotient->central, alpha, aux);
      if (!c.only_kind(Kind::Coord)) schema("quotient.central", "expected a function of the coordinates");
    }
    if (spec.symplectic) {
      auto w = parse_element(spec.symplectic->form, alpha, aux);
      for (const auto& [word, v] : w.terms()) {
        if (std::any_of(word.begin(), word.end(), [](const Generator& g) { return g.kind == Kind::Deriv; })) {
          schema("symplectic.form", "a form cannot contain derivatives");
        }
      }
    }
  } catch (const ParseError& e) {
    throw ConfigError(std::string("element expression: ") + e.what());
  } catch (const ScalarError& e) {
    throw ConfigError(std::string("element expression: ") + e.what());
  }

  derive_matrices(spec);
  return spec;
}

std::vector<ValidationIssue> validate_plane(const PlaneSpec& spec) {
  std::vector<ValidationIssue> issues;
  const auto& r = spec.r_matrix;
  if (!check_ybe(r)) issues.push_back({"ybe", "Yang-Baxter equation R12 R23 R12 = R23 R12 R23", "fails"});
  std::vector<Scalar> ev{spec.eigenvalues.lambda1, spec.eigenvalues.lambda2};
  std::string poly = "(R - lambda1)(R - lambda2) = 0";
  if (spec.family == Family::B) {
    ev.insert(ev.begin(), *spec.eigenvalues.lambda0);
    poly = "(R - lambda0)(R - lambda1)(R - lambda2) = 0";
    auto q = projector_q(r, ev[0], ev[1], ev[2]);
    if (!(q * q == q)) issues.push_back({"ybe", "projector Q Q = Q", "fails"});
  }
  if (!check_min_poly(r, ev)) issues.push_back({"min_poly", "minimal polynomial " + poly, "fails"});
  if (spec.d.size() == 0) {
    issues.push_back({"wz", "C = qR invertible", "C is singular"});
    return issues;
  }
  for (const auto& cond : wz_conditions(spec.b, spec.c, spec.d, spec.f).conditions) {
    if (cond.status() == CheckStatus::fail) {
      issues.push_back({"wz", "consistency condition " + cond.statement, cond.reason});
    }
  }
  return issues;
}

PlaneSpec load_plane(const std::string& json_text) {
  PlaneSpec spec = parse_plane_config(json_text);
  auto issues = validate_plane(spec);
  if (!issues.empty()) throw PlaneValidationError(std::move(issues));
  return spec;
}

std::string serialize_plane(const PlaneSpec& spec) {
  nlohmann::ordered_json doc;
  doc["name"] = spec.name;
  doc["dimension"] = spec.dimension;
  doc["generators"] = spec.generators;
  if (spec.order != spec.generators) doc["order"] = spec.order;
  doc["family"] = to_string(spec.family);
  doc["r_matrix"] = leg_matrix_strings(spec.r_matrix);
  nlohmann::ordered_json ev;
  if (spec.eigenvalues.lambda0) ev["lambda0"] = spec.eigenvalues.lambda0->to_string();
  ev["lambda1"] = spec.eigenvalues.lambda1.to_string();
  ev["lambda2"] = spec.eigenvalues.lambda2.to_string();
  doc["eigenvalues"] = ev;
  if (spec.specialization) doc["s"] = Scalar(spec.specialization->s_value).to_string();
  else doc["q"] = "generic";
  if (spec.gamma_policy == GammaPolicy::explicit_matrix) doc["gamma"] = leg_matrix_strings(*spec.gamma_matrix);
  else doc["gamma"] = to_string(spec.gamma_policy);
  if (spec.quotient) {
    nlohmann::ordered_json qo;
    qo["central"] = spec.quotient->central;
    qo["symbol"] = spec.quotient->symbol;
    qo["conormal"] = spec.quotient->conormal;
    doc["quotient"] = qo;
  }
  if (spec.symplectic) {
    nlohmann::ordered_json so;
    so["form"] = spec.symplectic->form;
    so["scale"] = spec.symplectic->scale;
    doc["symplectic"] = so;
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> builtin_plane_names() { return {"gl2", "orth3", "sphere_qm1"}; }

std::string builtin_plane_config(const std::string& name) {
  if (name == "gl2") return detail::kGl2Config;
  if (name == "orth3") return detail::kOrth3Config;
  if (name == "sphere_qm1") return detail::kSphereConfig;
  throw ConfigError("unknown built-in plane \"" + name + "\"");
}

PlaneSpec builtin_plane(const std::string& name) { return load_plane(builtin_plane_config(name)); }

std::vector<PlaneSpec> builtin_planes() {
  std::vector<PlaneSpec> out;
  for (const auto& n : builtin_plane_names()) out.push_back(builtin_plane(n));
  return out;
}

LegMatrix inverse_via_min_poly(const LegMatrix& r, const EigenvalueSet& ev, Family family) {
  const auto e = LegMatrix::identity(r.base_dim(), r.legs());
  const Scalar& l1 = ev.lambda1;
  const Scalar& l2 = ev.lambda2;
  if (family == Family::A) {
    // R^2 - (l1 + l2) R + l1 l2 = 0
    return (Scalar(-1) / (l1 * l2)) * (r - (l1 + l2) * e);
  }
  const Scalar& l0 = *ev.lambda0;
  // R^3 - e1 R^2 + e2 R - e3 = 0
  Scalar e1 = l0 + l1 + l2, e2 = l0 * l1 + l0 * l2 + l1 * l2, e3 = l0 * l1 * l2;
  return (Scalar(1) / e3) * (r * r - e1 * r + e2 * e);
}

std::vector<GammaCandidate> resolve_gamma(const PlaneSpec& spec) {
  std::vector<GammaCandidate> out;
  if (spec.d.size() == 0) return out;
  const LegMatrix d = spec.at_plane_q(spec.d);
  auto add = [&](const std::string& name, const LegMatrix& m) { out.push_back({name, m, gamma_condition(d, m)}); };
  auto r_inverse = [&] { return spec.at_plane_q(Scalar::q() * spec.d); };
  auto r_over_q = [&] { return spec.at_plane_q(Scalar::q().inverse() * spec.r_matrix); };
  switch (spec.gamma_policy) {
    case GammaPolicy::r_over_q: add("r_over_q", r_over_q()); break;
    case GammaPolicy::d: add("d", d); break;
    case GammaPolicy::r_inverse: add("r_inverse", r_inverse()); break;
    case GammaPolicy::explicit_matrix: add("explicit", spec.at_plane_q(*spec.gamma_matrix)); break;
    case GammaPolicy::automatic:
      add("d", d);
      add("r_inverse", r_inverse());
      if (spec.family == Family::A) add("r_over_q", r_over_q());
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plane

AlgebraElement Plane::tangency(const VectorField& x) const {
  if (!central) return {};
  AlgebraElement c = spec.specialization ? central->specialize(*spec.specialization) : *central;
  return system->normal_form(apply_field(x, ambient->normal_form(c), *ambient));
}

Plane build_plane(const PlaneSpec& spec, int degree_cap) {
  if (spec.d.size() == 0) throw PlaneValidationError({{"wz", "C = qR invertible", "C is singular"}});
  Plane p;
  p.spec = spec;
  p.b = spec.at_plane_q(spec.b);
  p.c = spec.at_plane_q(spec.c);
  p.d = spec.at_plane_q(spec.d);
  p.f = spec.at_plane_q(spec.f);

  CalculusData data;
  data.alphabet = spec.alphabet();
  data.b = p.b;
  data.c = p.c;
  data.d = p.d;
  data.f = p.f;
  data.aux_symbols = spec.aux_symbols();
  data.degree_cap = degree_cap;
  auto ambient = std::make_shared<const RewriteSystem>(build_rewrite_system(data));
  p.ambient = ambient;
  p.system = ambient;

  std::optional<FormIdeal> ideal;
  if (spec.quotient) {
    const auto& qs = *spec.quotient;
    p.central = parse_element(qs.central, data.alphabet, data.aux_symbols);
    CalculusData generic = data;
    generic.b = spec.b;
    generic.c = spec.c;
    generic.d = spec.d;
    generic.f = spec.f;
    p.generic = spec.specialization ? std::make_shared<const RewriteSystem>(build_rewrite_system(generic)) : ambient;
    p.d_central = d_function(p.generic->normal_form(*p.central), *p.generic);

    data.central = spec.specialization ? p.central->specialize(*spec.specialization) : *p.central;
    data.central_symbol = qs.symbol;
    p.system = std::make_shared<const RewriteSystem>(build_rewrite_system(data));

    if (qs.conormal && !p.d_central->is_zero()) {
      // Normalize at generic q first: the leading coefficient may vanish at the specialization.
      const auto& body = p.d_central->body();
      AlgebraElement k = body.scaled(body.terms().rbegin()->second.inverse());
      if (spec.specialization) k = k.specialize(*spec.specialization);
      p.kappa = p.system->normal_form(k);
      ideal = FormIdeal(*p.kappa, p.system);
    }
  }

  p.gamma_candidates = resolve_gamma(spec);
  for (const auto& g : p.gamma_candidates) {
    if (g.passes()) {
      p.gamma = g;
      break;
    }
  }
  if (spec.gamma_policy == GammaPolicy::explicit_matrix && !p.gamma) {
    throw PlaneValidationError({{"gamma", "(D + E)(E - Gamma) = 0 with Gamma12 Gamma23 Gamma12 = Gamma23 Gamma12 Gamma23",
                                 "the explicit gamma fails"}});
  }

  if (spec.symplectic) {
    if (!p.gamma) {
      p.omega_error = "no gamma candidate satisfies (D + E)(E - Gamma) = 0 and the Yang-Baxter equation at this q";
    } else {
      const auto& sys = *p.system;
      auto w = WedgeForm::make(sys.parse(spec.symplectic->form), sys);
      if (w.degree() != 2 && !w.is_zero()) throw ConfigError("symplectic.form: expected a two-form");
      Scalar scale = parse_scalar(spec.symplectic->scale, data.aux_symbols);
      if (spec.specialization) scale = scale.specialize(*spec.specialization);
      p.omega = SymplecticForm::make(w.is_zero() ? WedgeForm::zero(2) : w, scale, p.gamma->matrix, sys, ideal);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

void add_group(FixtureSet& fs, const std::string& group,
               std::initializer_list<std::pair<const char*, const char*>> relations) {
  for (const auto& [lhs, rhs] : relations) fs.relations.push_back({group + ": " + lhs + " = " + rhs, lhs, rhs});
}

}  // namespace

FixtureSet builtin_fixtures(const std::string& plane_name) {
  FixtureSet fs;
  if (plane_name == "gl2") {
    add_group(fs, "coordinates x^i x^j = q x^j x^i for i < j", {{"x*y", "q*y*x"}});
    add_group(fs, "differentials xi^i xi^i = 0, xi^i xi^j = -q^-1 xi^j xi^i for i < j",
              {{"d(x)*d(x)", "0"}, {"d(y)*d(y)", "0"}, {"d(x)*d(y)", "-q^-1*d(y)*d(x)"}});
    add_group(fs, "plane with coordinates x, y", {{"x*y", "q*y*x"}});
    add_group(fs, "plane differentials xi = dx, eta = dy",
              {{"d(x)*d(x)", "0"}, {"d(y)*d(y)", "0"}, {"d(x)*d(y)", "-(1/q)*d(y)*d(x)"}});
    const std::vector<std::tuple<std::string, std::vector<std::string>, std::string>> omega2 = {
        {"", {"x", "y"}, "q^-2"}, {"", {"y", "x"}, "-q^-1"}};
    fs.tensors.push_back({"tensor form xi^eta = q^-2 xi⊗eta - q^-1 eta⊗xi", "d(x)*d(y)", omega2});
    fs.tensors.push_back({"tensor form -eta^xi/q = q^-2 xi⊗eta - q^-1 eta⊗xi", "-(1/q)*d(y)*d(x)", omega2});
    fs.fields.push_back({"X_x = q D_y", "x", "q*D(y)", true});
    fs.fields.push_back({"X_y = -q^2 D_x", "y", "-q^2*D(x)", true});
    fs.brackets.push_back({"[x, y] = -q", "x", "y", "-q"});
    fs.brackets.push_back({"[y, x] = q^2", "y", "x", "q^2"});
    fs.asymmetries.push_back({"q [x, y] = -[y, x]", "x", "y", "q"});
    fs.motions.push_back({"H = y gives x' = -q, y' = 0", "y", {{"x", "-q"}, {"y", "0"}}});
  } else if (plane_name == "orth3") {
    add_group(fs, "orthogonal coordinates",
              {{"x+*x0", "q*x0*x+"}, {"x0*x-", "q*x-*x0"}, {"x+*x- - x-*x+", "(s^-1 - s)*x0*x0"}});
    add_group(fs, "orthogonal coordinates and differentials",
              {{"x+*d(x+)", "q^2*d(x+)*x+"},
               {"x+*d(x0)", "q*d(x0)*x+ + (q^2 - 1)*d(x+)*x0"},
               {"x+*d(x-)", "d(x-)*x+ + (q^-1 - q)*s*d(x0)*x0 - (q^-1 - q)*(q - 1)*d(x+)*x-"},
               {"x0*d(x+)", "q*d(x+)*x0"},
               {"x0*d(x0)", "q*d(x0)*x0 + (q^-1 - q)*s*d(x+)*x-"},
               {"x0*d(x-)", "q*d(x-)*x0 + (q^2 - 1)*d(x0)*x-"},
               {"x-*d(x+)", "d(x+)*x-"},
               {"x-*d(x0)", "q*d(x0)*x-"},
               {"x-*d(x-)", "q^2*d(x-)*x-"}});
    add_group(fs, "orthogonal derivatives and coordinates",
              {{"D(x+)*x+", "1 - (q^-1 - q)*(q - 1)*x-*D(x-) + (q^2 - 1)*x0*D(x0) + q^2*x+*D(x+)"},
               {"D(x+)*x0", "(s^-1 - s^3)*x-*D(x0) + q*x0*D(x+)"},
               {"D(x+)*x-", "x-*D(x+)"},
               {"D(x0)*x+", "(s^-1 - s^3)*x0*D(x-) + q*x+*D(x0)"},
               {"D(x0)*x0", "1 + (q^2 - 1)*x-*D(x-) + q*x0*D(x0)"},
               {"D(x0)*x-", "q*x-*D(x0)"},
               {"D(x-)*x+", "x+*D(x-)"},
               {"D(x-)*x0", "q*x0*D(x-)"},
               {"D(x-)*x-", "1 + q^2*x-*D(x-)"}});
    const std::string d = "(q - q^-1)";
    MatrixFixture t;
    t.name = "D = (qR)^-1 against the printed D table";
    t.labels = {"++", "+0", "+-", "0+", "00", "0-", "-+", "-0", "--"};
    t.entries = {{"++", "++", "q^-2"},      {"+0", "0+", "q^-1"},          {"+-", "-+", "1"},
                 {"0+", "+0", "q^-1"},      {"0+", "0+", "-" + d + "/q"},  {"00", "00", "q^-1"},
                 {"00", "-+", d + "/s"},    {"0-", "-0", "q^-1"},          {"-+", "+-", "1"},
                 {"-+", "00", d + "/s"},    {"-+", "-+", d + "*(1 - q^-1)"}, {"-0", "0-", "q^-1"},
                 {"-0", "-0", "-" + d + "/q"}, {"--", "--", "q^-2"}};
    fs.d_table = t;
  } else if (plane_name == "sphere_qm1") {
    fs.conormal_combination = "x0*d(x0) + s*x-*d(x+) + s^-1*x+*d(x-)";
    fs.fields.push_back({"X_x+ = -(x+ D_0 + i x0 D_-)", "x+", "-(x+*D(x0) + i*x0*D(x-))", false});
    fs.fields.push_back({"X_x- = -(x- D_0 - i x0 D_+)", "x-", "-(x-*D(x0) - i*x0*D(x+))", false});
    fs.fields.push_back({"X_x0 = -(x- D_- + x+ D_+)", "x0", "-(x-*D(x-) + x+*D(x+))", false});
    fs.brackets.push_back({"[x+, x-] = i x0", "x+", "x-", "i*x0"});
    fs.brackets.push_back({"[x-, x+] = -i x0", "x-", "x+", "-i*x0"});
    fs.brackets.push_back({"[x0, x+] = x+", "x0", "x+", "x+"});
    fs.brackets.push_back({"[x0, x-] = x-", "x0", "x-", "x-"});
    fs.brackets.push_back({"[x+, x0] = x+", "x+", "x0", "x+"});
    fs.brackets.push_back({"[x-, x0] = x-", "x-", "x0", "x-"});
    fs.motions.push_back({"H = x0 gives x+' = x+, x-' = x-, x0' = 0", "x0", {{"x+", "x+"}, {"x-", "x-"}, {"x0", "0"}}});
    fs.degenerate_finding = true;
  }
  return fs;
}

RelationReport verify_reference_relations(const Plane& plane, const FixtureSet& fixtures) {
  RelationReport rep;
  const auto& sys = plane.sys();
  std::optional<bool> confluent;
  auto is_confluent = [&] {
    if (!confluent) confluent = sys.overlap_test({Kind::Coord, Kind::Diff, Kind::Deriv}).passed();
    return *confluent;
  };
  for (const auto& fx : fixtures.relations) {
    ++rep.checked;
    AlgebraElement diff = sys.parse(fx.lhs) - sys.parse(fx.rhs);
    AlgebraElement residual = sys.normal_form(diff);
    if (residual.is_zero()) continue;
    // Second route: the other reduction strategy must land on the same residual.
    bool confirmed = is_confluent() && sys.normal_form(diff, Strategy::rightmost) == residual;
    rep.mismatches.push_back({fx.name,
                              "derived " + fx.lhs + " = " + sys.to_string(sys.normal_form(sys.parse(fx.lhs))) +
                                  ", printed " + sys.to_string(sys.normal_form(sys.parse(fx.rhs))) +
                                  ", residual " + sys.to_string(residual),
                              confirmed ? CheckStatus::finding : CheckStatus::fail});
  }
  if (fixtures.d_table && plane.spec.d.size() != 0) {
    const auto& t = *fixtures.d_table;
    const auto& spec = plane.spec;
    const auto n = static_cast<Eigen::Index>(t.labels.size());
    auto label = [&](const std::string& l) {
      auto it = std::find(t.labels.begin(), t.labels.end(), l);
      return static_cast<Eigen::Index>(it - t.labels.begin());
    };
    Matrix printed = Matrix::Constant(n, n, Scalar(0));
    for (const auto& [r, c, v] : t.entries) printed(label(r), label(c)) = parse_scalar(v);
    const LegMatrix alt = Scalar::q().inverse() * inverse_via_min_poly(spec.r_matrix, spec.eigenvalues, spec.family);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        ++rep.checked;
        const Scalar& derived = spec.d.at(r, c);
        if (derived == printed(r, c)) continue;
        bool confirmed = alt.at(r, c) == derived;
        rep.mismatches.push_back({t.name + " at (" + t.labels[static_cast<std::size_t>(r)] + ", " +
                                      t.labels[static_cast<std::size_t>(c)] + ")",
                                  "derived " + derived.to_string() + ", printed " + printed(r, c).to_string(),
                                  confirmed ? CheckStatus::finding : CheckStatus::fail});
      }
    }
  }
  return rep;
}

std::vector<std::string> coordinate_commutators(const PlaneSpec& spec, const Specialization& sp) {
  CalculusData data;
  data.alphabet = spec.alphabet();
  data.b = specialize(spec.b, sp);
  data.c = specialize(spec.c, sp);
  data.d = specialize(spec.d, sp);
  data.f = specialize(spec.f, sp);
  data.aux_symbols = spec.aux_symbols();
  RewriteSystem sys = build_rewrite_system(data);
  std::vector<std::string> out;
  for (int a = 0; a < sys.dim(); ++a) {
    for (int b = a + 1; b < sys.dim(); ++b) {
      auto c = sys.normal_form(concat(sys.x(a), sys.x(b)) - concat(sys.x(b), sys.x(a)));
      if (!c.is_zero()) {
        const auto& al = sys.alphabet();
        out.push_back("[" + al.name_of_rank(a) + ", " + al.name_of_rank(b) + "] = " + sys.to_string(c));
      }
    }
  }
  return out;
}

std::optional<Scalar> proportionality(const AlgebraElement& form, const AlgebraElement& combination) {
  if (combination.is_zero()) return std::nullopt;
  for (auto it = combination.terms().rbegin(); it != combination.terms().rend(); ++it) {
    if (!it->second.is_monomial()) continue;
    Scalar c = form.coeff(it->first) / it->second;
    if (form == combination.scaled(c)) return c;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace qplane
