#pragma once

#include <string>
#include <vector>

#include "arcop/system.hpp"

namespace arcop::fixtures {

inline Scalar q(long v, Field f = Field::Q) { return Scalar(f, v); }

/// Truncated polynomial algebra k[x]/x^(n) with ∫ x^(n-1) = 1, basis labels given.
inline FrobeniusAlgebra truncated(const std::string& name, const std::vector<std::string>& labels, int step,
                                  Field f = Field::Q) {
  AlgebraSpec s;
  s.name = name;
  s.field = f;
  int n = static_cast<int>(labels.size());
  for (int i = 0; i < n; ++i) s.basis.push_back({labels[i], step * i});
  s.unit = unit_vec(f, n, 0);
  s.trace = unit_vec(f, n, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) s.mul.push_back({i, j, i + j, q(1, f)});
  return FrobeniusAlgebra::build(s);
}

inline FrobeniusAlgebra fix_k(Field f = Field::Q) { return truncated("K", {"1"}, 0, f); }
inline FrobeniusAlgebra fix_s2(Field f = Field::Q) { return truncated("S2", {"1", "x"}, 2, f); }
inline FrobeniusAlgebra fix_cp1(Field f = Field::Q) { return truncated("CP1", {"1", "t"}, 2, f); }
inline FrobeniusAlgebra fix_cp2(Field f = Field::Q) { return truncated("CP2", {"1", "h", "h2"}, 2, f); }
inline FrobeniusAlgebra fix_dual_numbers(Field f = Field::Q) { return truncated("Qy", {"1", "y"}, 2, f); }

inline const std::vector<std::string>& default_branes() {
  static const std::vector<std::string> b{"S", "T", "U"};
  return b;
}

/// A_∅ = S2, every brane a point: r(1) = 1, r(x) = 0.
inline BraneSystem pt_system(Field f = Field::Q, const std::vector<std::string>& branes = default_branes()) {
  std::map<std::string, std::pair<FrobeniusAlgebra, Matrix>> m;
  for (const auto& b : branes) m.emplace(b, std::make_pair(fix_k(f), Matrix{{q(1, f), q(0, f)}}));
  return BraneSystem(fix_s2(f), m);
}

/// A_∅ = CP2, every brane a line: h -> t, h^2 -> 0.
inline BraneSystem cp2cp1_system(Field f = Field::Q, const std::vector<std::string>& branes = default_branes()) {
  std::map<std::string, std::pair<FrobeniusAlgebra, Matrix>> m;
  Matrix r{{q(1, f), q(0, f), q(0, f)}, {q(0, f), q(1, f), q(0, f)}};
  for (const auto& b : branes) m.emplace(b, std::make_pair(fix_cp1(f), r));
  return BraneSystem(fix_cp2(f), m);
}

/// A_∅ = K, A_b = Q[y]/y^2: satisfies (E) but not (I1).
inline BraneSystem failing_i1_system(Field f = Field::Q) {
  std::map<std::string, std::pair<FrobeniusAlgebra, Matrix>> m;
  m.emplace("b", std::make_pair(fix_dual_numbers(f), Matrix{{q(1, f)}, {q(0, f)}}));
  return BraneSystem(fix_k(f), m);
}

}  // namespace arcop::fixtures
