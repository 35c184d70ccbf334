#pragma once

// Cell-by-cell transcriptions used as test inputs.

#include <string>
#include <utility>

#include "qplane/linalg.hpp"

namespace qtest {

inline qplane::LegMatrix r_gl2() {
  return qplane::parse_leg_matrix(2, {{"q", "0", "0", "0"},
                                      {"0", "q - q^-1", "1", "0"},
                                      {"0", "1", "0", "0"},
                                      {"0", "0", "0", "q"}});
}

// Basis order (+, 0, -); d = q - q^-1.
inline qplane::LegMatrix r_orth3() {
  const char* labels[] = {"++", "+0", "+-", "0+", "00", "0-", "-+", "-0", "--"};
  auto at = [&](const std::string& l) {
    for (int k = 0; k < 9; ++k) {
      if (l == labels[k]) return k;
    }
    return -1;
  };
  qplane::Matrix m = qplane::Matrix::Constant(9, 9, qplane::Scalar(0));
  auto put = [&](const std::string& r, const std::string& c, const std::string& v) {
    m(at(r), at(c)) = qplane::parse_scalar(v);
  };
  const std::string d = "(q - q^-1)";
  put("++", "++", "q");
  put("+0", "+0", d);
  put("+0", "0+", "1");
  put("+-", "+-", d + "*(1 - q^-1)");
  put("+-", "00", "-" + d + "/s");
  put("+-", "-+", "q^-1");
  put("0+", "+0", "1");
  put("00", "+-", "-" + d + "/s");
  put("00", "00", "1");
  put("0-", "0-", d);
  put("0-", "-0", "1");
  put("-+", "+-", "q^-1");
  put("-0", "0-", "1");
  put("--", "--", "q");
  return {3, 2, std::move(m)};
}

}  // namespace qtest

#include "qplane/ncalg.hpp"

namespace qtest {

inline qplane::CalculusData gl2_data() {
  using qplane::parse_scalar;
  qplane::CalculusData data;
  data.alphabet = qplane::Alphabet({"x", "y"}, {0, 1});
  auto r = r_gl2();
  data.b = parse_scalar("q^-1") * r;
  data.c = parse_scalar("q") * r;
  data.d = qplane::inverse(data.c);
  data.f = data.b;
  return data;
}

inline qplane::CalculusData orth3_data() {
  using qplane::parse_scalar;
  qplane::CalculusData data;
  data.alphabet = qplane::Alphabet({"x+", "x0", "x-"}, {2, 1, 0});
  auto r = r_orth3();
  auto q = qplane::projector_q(r, parse_scalar("q^-2"), parse_scalar("-q^-1"), parse_scalar("q"));
  data.c = parse_scalar("q") * r;
  data.d = qplane::inverse(data.c);
  data.b = qplane::LegMatrix::identity(3) - q;
  data.f = data.b;
  return data;
}

}  // namespace qtest
