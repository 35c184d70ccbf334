#include "qplane/linalg.hpp"

namespace qplane {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::finding: return "finding";
  }
  return "fail";
}

CheckStatus ConditionResult::status() const {
  if (holds_as_printed) return CheckStatus::pass;
  if (holds_corrected.value_or(false)) return CheckStatus::finding;
  return CheckStatus::fail;
}

bool WzReport::all_hold() const {
  for (const auto& c : conditions) {
    if (c.status() == CheckStatus::fail) return false;
  }
  return true;
}

bool WzReport::all_hold_as_printed() const {
  for (const auto& c : conditions) {
    if (!c.holds_as_printed) return false;
  }
  return true;
}

namespace {

ConditionResult condition(std::string name, std::string statement, bool holds) {
  ConditionResult r;
  r.name = std::move(name);
  r.statement = std::move(statement);
  r.holds_as_printed = holds;
  return r;
}

void add_corrected(ConditionResult& r, std::string statement, bool holds) {
  if (r.holds_as_printed) return;
  r.corrected_statement = std::move(statement);
  r.holds_corrected = holds;
  r.reason = holds ? "printed sign fails; the sign forced by applying d to the coordinate relations holds"
                   : "fails as printed and with the corrected sign";
}

}  // namespace

WzReport wz_conditions(const LegMatrix& b, const LegMatrix& c, const LegMatrix& d, const LegMatrix& f) {
  const int n = b.base_dim();
  auto e2 = LegMatrix::identity(n, 2);
  auto e3 = LegMatrix::identity(n, 3);
  auto b12 = embed(b, LegPosition::k12), b23 = embed(b, LegPosition::k23);
  auto c12 = embed(c, LegPosition::k12), c23 = embed(c, LegPosition::k23);
  auto d12 = embed(d, LegPosition::k12), d23 = embed(d, LegPosition::k23);
  auto f12 = embed(f, LegPosition::k12), f23 = embed(f, LegPosition::k23);
  auto cc_up = c23 * c12;
  auto cc_down = c12 * c23;

  WzReport report;

  auto r1 = condition("wz1", "(E - B)(E - C) = 0", ((e2 - b) * (e2 - c)).is_zero());
  add_corrected(r1, "(E - B)(E + C) = 0", ((e2 - b) * (e2 + c)).is_zero());
  report.conditions.push_back(std::move(r1));

  report.conditions.push_back(condition("wz2", "(E12 - B12) C23 C12 = C23 C12 (E23 - B23)",
                                        (e3 - b12) * cc_up == cc_up * (e3 - b23)));

  report.conditions.push_back(condition("wz3", "D23 C12 C23 = C12 C23 D12, D = C^-1",
                                        d23 * cc_down == cc_down * d12 && d * c == e2 && c * d == e2));

  auto r4 = condition("wz4", "(E - F)(E - C) = 0", ((e2 - f) * (e2 - c)).is_zero());
  add_corrected(r4, "(E - F)(E + C) = 0", ((e2 - f) * (e2 + c)).is_zero());
  report.conditions.push_back(std::move(r4));

  report.conditions.push_back(condition("wz5", "(E23 - F23) C12 C23 = C12 C23 (E12 - F12)",
                                        (e3 - f23) * cc_down == cc_down * (e3 - f12)));
  return report;
}

GammaCheck gamma_condition(const LegMatrix& d, const LegMatrix& gamma) {
  auto e = LegMatrix::identity(d.base_dim(), 2);
  GammaCheck g;
  g.exterior_relation = ((d + e) * (e - gamma)).is_zero();
  g.ybe = check_ybe(gamma);
  return g;
}

LegMatrix specialize(const LegMatrix& m, const Specialization& sp) {
  return m.map([&](const Scalar& v) { return v.specialize(sp); });
}

LegMatrix parse_leg_matrix(int base_dim, const std::vector<std::vector<std::string>>& rows,
                           const std::set<std::string>& aux_symbols) {
  const Eigen::Index size = LegMatrix::dimension(base_dim, 2);
  if (static_cast<Eigen::Index>(rows.size()) != size) {
    throw std::invalid_argument("matrix must have " + std::to_string(size) + " rows");
  }
  Matrix m(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != size) {
      throw std::invalid_argument("matrix row " + std::to_string(r) + " must have " + std::to_string(size) +
                                  " entries");
    }
    for (Eigen::Index c = 0; c < size; ++c) m(r, c) = parse_scalar(row[static_cast<std::size_t>(c)], aux_symbols);
  }
  return {base_dim, 2, std::move(m)};
}

std::vector<std::vector<std::string>> leg_matrix_strings(const LegMatrix& m) {
  std::vector<std::vector<std::string>> out;
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    std::vector<std::string> row;
    for (Eigen::Index c = 0; c < m.size(); ++c) row.push_back(m.at(r, c).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qplane
