#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qplane/planes.hpp"

namespace qplane {

const char* version();

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct Report {
  std::string plane;
  std::string suite;
  std::vector<Check> checks;  ///< sorted by name

  std::size_t count(CheckStatus s) const;
  /// 0 when nothing failed (findings count as failures under `strict`), else 1.
  int exit_code(bool strict) const;
};

struct SuiteOptions {
  int degree = 1;  ///< vector-field ansatz degree
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  int word_length = 5;
  int max_degree = 16;  ///< rewrite cap
};

/// "ybe", "wz", "gamma", "relations", "closedness", "hamiltonian"; "all" runs each.
const std::vector<std::string>& suite_names();

/// Runs one suite. The plane's calculus is built only for suites that need it;
/// a spec failing validation still gets its ybe/wz diagnostics.
Report run_suite(const PlaneSpec& spec, const std::string& suite, const SuiteOptions& options = {});

std::string report_json(const Report& report);
std::string report_text(const Report& report);

}  // namespace qplane
