#pragma once

#include <random>

#include "qplane/qcalc.hpp"

namespace qtest {

// Three random coordinate monomials of length <= max_degree with small
// coefficients c * s^k, normal-ordered.
inline qplane::AlgebraElement random_function(const qplane::RewriteSystem& sys, std::mt19937_64& rng,
                                              int max_degree) {
  using namespace qplane;
  std::uniform_int_distribution<int> letter(0, sys.dim() - 1), len(0, max_degree), coef(-3, 3);
  AlgebraElement f;
  for (int t = 0; t < 3; ++t) {
    Word w;
    int l = len(rng);
    for (int p = 0; p < l; ++p) w.push_back({Kind::Coord, static_cast<std::uint8_t>(letter(rng))});
    f.add(w, Scalar(coef(rng)) * Scalar::s().pow(coef(rng)));
  }
  return sys.normal_form(f);
}

// Sum over generators of (random linear function) * d(x^r).
inline qplane::WedgeForm random_one_form(const qplane::RewriteSystem& sys, std::mt19937_64& rng) {
  using namespace qplane;
  AlgebraElement e;
  for (int r = 0; r < sys.dim(); ++r) e += concat(random_function(sys, rng, 1), sys.xi(r));
  return WedgeForm::make(e, sys);
}

}  // namespace qtest
