#pragma once

// Fourier-Motzkin feasibility — an LP cross-check that shares no code with
// the simplex. Only usable for small systems (elimination blows up).

#include <vector>

#include "ample/rational.hpp"
#include "ample/simplex.hpp"

namespace fm {

// each row: a.x <= b, stored as (a..., b)
inline bool feasible(const ample::LinearProgram& lp) {
  using ample::Rational;
  std::vector<std::vector<Rational>> rows;
  auto push = [&](std::vector<Rational> a, Rational b) {
    a.push_back(b);
    rows.push_back(std::move(a));
  };
  for (const auto& r : lp.rows) {
    push(r.coeff, r.rhs);
    if (r.type == ample::LinearProgram::Eq) {
      std::vector<Rational> neg = r.coeff;
      for (auto& c : neg) c = -c;
      push(std::move(neg), -r.rhs);
    }
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    std::vector<Rational> a(static_cast<std::size_t>(lp.num_vars), Rational(0));
    a[static_cast<std::size_t>(j)] = -1;
    push(std::move(a), Rational(0)); // x_j >= 0
  }

  for (int v = lp.num_vars - 1; v >= 0; --v) {
    std::vector<std::vector<Rational>> pos, neg, zero;
    for (auto& row : rows) {
      const Rational& c = row[static_cast<std::size_t>(v)];
      if (c > 0)
        pos.push_back(row);
      else if (c < 0)
        neg.push_back(row);
      else
        zero.push_back(row);
    }
    std::vector<std::vector<Rational>> next = std::move(zero);
    for (const auto& p : pos)
      for (const auto& n : neg) {
        // scale so the v-coefficients cancel
        Rational cp = p[static_cast<std::size_t>(v)];
        Rational cn = -n[static_cast<std::size_t>(v)];
        std::vector<Rational> comb(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) comb[k] = cn * p[k] + cp * n[k];
        next.push_back(std::move(comb));
      }
    for (auto& row : next) row.erase(row.begin() + v);
    rows = std::move(next);
  }
  for (const auto& row : rows)
    if (row.back() < 0) return false;
  return true;
}

} // namespace fm
