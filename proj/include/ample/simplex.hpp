#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/rational.hpp"

namespace ample {

// Exact LP over the rationals:  maximize c.x  subject to  Ax {<=,=} b, x >= 0.
// Two-phase dense tableau simplex with Bland's rule, so no cycling. An
// infeasible system yields a Farkas certificate: row multipliers y, with
// y_i >= 0 on inequality rows, such that  y'A >= 0  componentwise and
// y'b < 0 — a nonnegative combination of the constraints contradicting
// x >= 0. Certificates are re-checked independently by check_farkas.
struct LinearProgram {
  enum RowType { LessEq, Eq };
  struct Row {
    std::string name;
    std::vector<Rational> coeff;
    RowType type = Eq;
    Rational rhs;
  };
  int num_vars = 0;
  std::vector<Row> rows;
  std::vector<Rational> objective; // empty = feasibility problem

  Row& add_row(std::string name, RowType type, Rational rhs) {
    rows.push_back(Row{std::move(name), std::vector<Rational>(static_cast<std::size_t>(num_vars)),
                       type, std::move(rhs)});
    return rows.back();
  }
};

struct LPResult {
  enum Status { Optimal, Infeasible, Unbounded };
  Status status = Infeasible;
  std::vector<Rational> x;
  Rational value;
  std::vector<Rational> farkas; // per original row, set when Infeasible
};

inline bool check_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  if (y.size() != lp.rows.size()) return false;
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    if (lp.rows[i].type == LinearProgram::LessEq && y[i] < 0) return false;
  Rational rhs = 0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) rhs += y[i] * lp.rows[i].rhs;
  if (rhs >= 0) return false;
  for (int j = 0; j < lp.num_vars; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
      col += y[i] * lp.rows[i].coeff[static_cast<std::size_t>(j)];
    if (col < 0) return false;
  }
  return true;
}

inline bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != lp.num_vars) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (int j = 0; j < lp.num_vars; ++j) lhs += row.coeff[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    if (row.type == LinearProgram::Eq && lhs != row.rhs) return false;
    if (row.type == LinearProgram::LessEq && lhs > row.rhs) return false;
  }
  return true;
}

namespace detail {

class Tableau {
public:
  // columns: [0, n) original, [n, n+s) slacks, [n+s, n+s+m) artificials
  Tableau(const LinearProgram& lp) : lp_(lp) {
    m_ = static_cast<int>(lp.rows.size());
    n_ = lp.num_vars;
    slack_of_.assign(static_cast<std::size_t>(m_), -1);
    int s = 0;
    for (int i = 0; i < m_; ++i)
      if (lp.rows[static_cast<std::size_t>(i)].type == LinearProgram::LessEq)
        slack_of_[static_cast<std::size_t>(i)] = s++;
    s_ = s;
    cols_ = n_ + s_ + m_;
    a_.assign(static_cast<std::size_t>(m_),
              std::vector<Rational>(static_cast<std::size_t>(cols_)));
    b_.assign(static_cast<std::size_t>(m_), Rational(0));
    flipped_.assign(static_cast<std::size_t>(m_), false);
    basis_.assign(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows[static_cast<std::size_t>(i)];
      bool flip = row.rhs < 0;
      flipped_[static_cast<std::size_t>(i)] = flip;
      Rational sign = flip ? -1 : 1;
      for (int j = 0; j < n_; ++j)
        a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            sign * row.coeff[static_cast<std::size_t>(j)];
      if (slack_of_[static_cast<std::size_t>(i)] >= 0)
        a_[static_cast<std::size_t>(i)]
          [static_cast<std::size_t>(n_ + slack_of_[static_cast<std::size_t>(i)])] = sign;
      a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_ + s_ + i)] = 1;
      b_[static_cast<std::size_t>(i)] = sign * row.rhs;
      basis_[static_cast<std::size_t>(i)] = n_ + s_ + i;
    }
  }

  LPResult solve() {
    // phase 1: maximize -(sum of artificials)
    std::vector<Rational> cost1(static_cast<std::size_t>(cols_), Rational(0));
    for (int j = n_ + s_; j < cols_; ++j) cost1[static_cast<std::size_t>(j)] = -1;
    run(cost1, /*allow_artificial=*/true);
    Rational w = objective_value(cost1);
    if (w < 0) {
      LPResult res;
      res.status = LPResult::Infeasible;
      res.farkas = extract_farkas(cost1);
      return res;
    }
    drive_out_artificials();

    std::vector<Rational> cost2(static_cast<std::size_t>(cols_), Rational(0));
    for (int j = 0; j < n_ && j < static_cast<int>(lp_.objective.size()); ++j)
      cost2[static_cast<std::size_t>(j)] = lp_.objective[static_cast<std::size_t>(j)];
    bool bounded = run(cost2, /*allow_artificial=*/false);
    LPResult res;
    if (!bounded) {
      res.status = LPResult::Unbounded;
      return res;
    }
    res.status = LPResult::Optimal;
    res.x.assign(static_cast<std::size_t>(n_), Rational(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] < n_)
        res.x[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] =
            b_[static_cast<std::size_t>(i)];
    res.value = objective_value(cost2);
    return res;
  }

private:
  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (int i = 0; i < m_; ++i)
      v += cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] *
           b_[static_cast<std::size_t>(i)];
    return v;
  }

  // y = c_B B^-1, recovered from the artificial columns which started as the
  // identity.
  std::vector<Rational> dual_from_artificials(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(static_cast<std::size_t>(m_), Rational(0));
    for (int i = 0; i < m_; ++i) {
      Rational acc = 0;
      for (int r = 0; r < m_; ++r)
        acc += cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] *
               a_[static_cast<std::size_t>(r)][static_cast<std::size_t>(n_ + s_ + i)];
      y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
  }

  std::vector<Rational> extract_farkas(const std::vector<Rational>& cost1) const {
    std::vector<Rational> y = dual_from_artificials(cost1);
    // un-flip: multipliers refer to the original row orientation
    for (int i = 0; i < m_; ++i)
      if (flipped_[static_cast<std::size_t>(i)]) y[static_cast<std::size_t>(i)] = -y[static_cast<std::size_t>(i)];
    return y;
  }

  // Bland's rule simplex on the current basis; returns false on unbounded.
  bool run(const std::vector<Rational>& cost, bool allow_artificial) {
    const int limit = allow_artificial ? cols_ : n_ + s_;
    for (;;) {
      // reduced cost r_j = c_j - c_B.(B^-1 A_j); the tableau column already
      // holds B^-1 A_j
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        bool basic = false;
        for (int i = 0; i < m_; ++i)
          if (basis_[static_cast<std::size_t>(i)] == j) basic = true;
        if (basic) continue;
        Rational r = cost[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i)
          r -= cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] *
               a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (r > 0) {
          enter = j;
          break; // Bland: first improving column
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        const Rational& aij = a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (aij <= 0) continue;
        Rational ratio = b_[static_cast<std::size_t>(i)] / aij;
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] <
                                  basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_ + s_) continue;
      int enter = -1;
      for (int j = 0; j < n_ + s_; ++j) {
        if (a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) {
          bool basic = false;
          for (int r = 0; r < m_; ++r)
            if (basis_[static_cast<std::size_t>(r)] == j) basic = true;
          if (!basic) {
            enter = j;
            break;
          }
        }
      }
      // a redundant row keeps its artificial basic at value zero; it can
      // never re-enter phase 2 because artificial columns are excluded there
      if (enter >= 0) pivot(i, enter);
    }
  }

  void pivot(int row, int col) {
    auto& pr = a_[static_cast<std::size_t>(row)];
    Rational p = pr[static_cast<std::size_t>(col)];
    assert(p != 0);
    for (auto& v : pr) v /= p;
    b_[static_cast<std::size_t>(row)] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      Rational f = a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < cols_; ++j)
        a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * pr[static_cast<std::size_t>(j)];
      b_[static_cast<std::size_t>(i)] -= f * b_[static_cast<std::size_t>(row)];
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  const LinearProgram& lp_;
  int m_ = 0, n_ = 0, s_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<int> basis_;
  std::vector<int> slack_of_;
  std::vector<bool> flipped_;
};

} // namespace detail

inline LPResult solve_lp(const LinearProgram& lp) {
  LPResult res = detail::Tableau(lp).solve();
  if (res.status == LPResult::Optimal) assert(satisfies(lp, res.x));
  if (res.status == LPResult::Infeasible) assert(check_farkas(lp, res.farkas));
  return res;
}

} // namespace ample
