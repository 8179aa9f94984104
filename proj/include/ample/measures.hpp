#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/clopen.hpp"
#include "ample/presentation.hpp"
#include "ample/rational.hpp"
#include "ample/simplex.hpp"
#include "ample/subshift.hpp"

namespace ample {

// Depth-D rational measure assignment: one value per admissible depth-D
// cylinder, summing to one. Coarser cylinders are evaluated by additivity.
struct MeasureVector {
  SubshiftPtr space;
  std::size_t depth = 0;
  std::vector<Word> cells;      // refine(whole, depth), sorted
  std::vector<Rational> values; // aligned with cells

  Rational of_word(const Word& w) const {
    if (w.size() > depth)
      throw std::invalid_argument("cylinder deeper than the measure vector");
    Rational acc = 0;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (is_prefix_of(w, cells[i])) acc += values[i];
    return acc;
  }

  Rational of(const Clopen& c) const {
    Rational acc = 0;
    for (const auto& w : c.words()) acc += of_word(w);
    return acc;
  }

  Rational total() const {
    Rational acc = 0;
    for (const auto& v : values) acc += v;
    return acc;
  }

  static MeasureVector uniform(const SubshiftPtr& ss, std::size_t depth) {
    MeasureVector m;
    m.space = ss;
    m.depth = depth;
    m.cells = Clopen::whole(ss).refine(depth);
    std::size_t n = m.cells.size();
    m.values.assign(n, Rational(1, static_cast<unsigned>(n)));
    return m;
  }
};

struct FarkasEntry {
  std::string row;
  Rational coeff;
};

struct MeasureLPOutcome {
  bool feasible = false;
  std::size_t depth = 0;
  std::optional<MeasureVector> sample;        // when feasible
  std::vector<FarkasEntry> farkas;            // when infeasible
};

namespace detail {

// The invariance constraints at depth D. One row per generator pair (u,v)
// and per admissible extension w of u at depth max(|u|, D - stretch(u,v)):
// the mass of N_w equals the mass of its image cylinder, both expanded into
// depth-D variables. Cells that straddle two pairs of one generator carry no
// constraint of their own; the per-pair rows already pin them down.
struct InvarianceSystem {
  std::size_t depth = 0;
  std::vector<Word> cells;
  std::map<Word, int> index;
  LinearProgram lp;
};

inline std::size_t invariance_floor(const GroupoidPresentation& g) {
  std::size_t d = 1;
  for (const auto& gen : g.generators())
    for (const auto& [u, v] : gen.map.pairs()) d = std::max({d, u.size(), v.size()});
  return d;
}

inline InvarianceSystem build_invariance_system(const GroupoidPresentation& g,
                                                std::size_t depth,
                                                bool skip_incompatible = false) {
  InvarianceSystem sys;
  if (!skip_incompatible) depth = std::max(depth, invariance_floor(g));
  sys.depth = depth;
  sys.cells = Clopen::whole(g.space()).refine(depth);
  for (std::size_t i = 0; i < sys.cells.size(); ++i)
    sys.index[sys.cells[i]] = static_cast<int>(i);
  LinearProgram& lp = sys.lp;
  lp.num_vars = static_cast<int>(sys.cells.size());

  auto add_cells = [&](LinearProgram::Row& row, const Word& w, const Rational& c) {
    for (std::size_t i = 0; i < sys.cells.size(); ++i)
      if (is_prefix_of(w, sys.cells[i])) row.coeff[i] += c;
  };

  {
    auto& mass = lp.add_row("mass", LinearProgram::Eq, 1);
    for (auto& c : mass.coeff) c = 1;
  }

  const Subshift& ss = *g.space();
  for (const auto& gen : g.generators()) {
    const auto& pairs = gen.map.pairs();
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const auto& [u, v] = pairs[pi];
      std::size_t stretch = v.size() > u.size() ? v.size() - u.size() : 0;
      if (u.size() > depth || v.size() > depth) {
        if (skip_incompatible) continue;
        throw std::logic_error("invariance depth below generator word length");
      }
      std::size_t dw = std::max(u.size(), depth - stretch);
      // admissible extensions of u to depth dw
      std::vector<Word> ws;
      std::vector<Word> stack{u};
      while (!stack.empty()) {
        Word w = stack.back();
        stack.pop_back();
        if (w.size() == dw) {
          ws.push_back(w);
          continue;
        }
        std::uint64_t m = ss.followers(w);
        while (m) {
          int a = std::countr_zero(m);
          m &= m - 1;
          stack.push_back(w.append(static_cast<Symbol>(a)));
        }
      }
      std::sort(ws.begin(), ws.end(), shortlex_less);
      for (const auto& w : ws) {
        Word image = v.concat(w.suffix_from(u.size()));
        auto& row = lp.add_row("inv " + gen.name + "#" + std::to_string(pi) + " " +
                                   (ss.format_word(w).empty() ? "-" : ss.format_word(w)),
                               LinearProgram::Eq, 0);
        add_cells(row, image, 1);
        add_cells(row, w, -1);
      }
    }
  }
  return sys;
}

inline MeasureVector vector_from(const InvarianceSystem& sys, const SubshiftPtr& ss,
                                 const std::vector<Rational>& x) {
  MeasureVector m;
  m.space = ss;
  m.depth = sys.depth;
  m.cells = sys.cells;
  m.values = x;
  return m;
}

inline std::vector<FarkasEntry> named_farkas(const InvarianceSystem& sys,
                                             const std::vector<Rational>& y) {
  std::vector<FarkasEntry> out;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] != 0) out.push_back({sys.lp.rows[i].name, y[i]});
  return out;
}

inline std::string presentation_key(const GroupoidPresentation& g) {
  const Subshift& ss = *g.space();
  std::string key = std::to_string(ss.alphabet_size()) + ";";
  for (int a = 0; a < ss.alphabet_size(); ++a)
    key += std::to_string(ss.successors(static_cast<Symbol>(a))) + ",";
  key += std::to_string(ss.start_mask()) + ";";
  for (const auto& gen : g.generators()) {
    key += gen.name + ":";
    for (const auto& [u, v] : gen.map.pairs())
      key += ss.format_word(u) + ">" + ss.format_word(v) + ",";
    key += ";";
  }
  return key;
}

// Whether the invariance polytope at this depth is non-empty. Searches probe
// the same presentation and depth over and over; an empty polytope means no
// measure witness can ever exist there, so the answer is worth caching.
inline bool invariance_feasible_cached(const GroupoidPresentation& g, std::size_t depth) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::size_t>, bool> cache;
  std::pair<std::string, std::size_t> key{presentation_key(g), depth};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto sys = build_invariance_system(g, depth);
  bool feasible = solve_lp(sys.lp).status == LPResult::Optimal;
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = feasible;
  return feasible;
}

} // namespace detail

// Feasibility of a G-invariant probability measure at cylinder depth D.
// D is raised to the smallest depth at which every generator constraint is
// expressible. Returns a vertex sample or a named Farkas certificate.
inline MeasureLPOutcome invariance_lp(const GroupoidPresentation& g, std::size_t depth) {
  auto sys = detail::build_invariance_system(g, depth);
  auto res = solve_lp(sys.lp);
  MeasureLPOutcome out;
  out.depth = sys.depth;
  if (res.status == LPResult::Optimal) {
    out.feasible = true;
    out.sample = detail::vector_from(sys, g.space(), res.x);
  } else {
    out.feasible = false;
    out.farkas = detail::named_farkas(sys, res.farkas);
  }
  return out;
}

// True iff m satisfies, exactly, every invariance constraint expressible at
// its own depth, plus nonnegativity and total mass one.
inline bool check_invariant(const GroupoidPresentation& g, const MeasureVector& m) {
  if (!same_space(g.space(), m.space)) return false;
  for (const auto& v : m.values)
    if (v < 0) return false;
  if (m.total() != 1) return false;
  auto expected = Clopen::whole(g.space()).refine(m.depth);
  if (m.cells != expected) return false;
  auto sys = detail::build_invariance_system(g, m.depth, /*skip_incompatible=*/true);
  for (const auto& row : sys.lp.rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < m.values.size(); ++j) lhs += row.coeff[j] * m.values[j];
    if (lhs != row.rhs) return false;
  }
  return true;
}

// Invariant measure with mu(K) > mu(V), found by maximizing the gap over the
// invariance polytope and testing positivity of the exact optimum; nullopt
// when no (depth-D) invariant measure violates mu(K) <= mu(V).
inline std::optional<MeasureVector> measure_refute(const GroupoidPresentation& g,
                                                   const Clopen& k, const Clopen& v,
                                                   std::size_t depth) {
  depth = std::max({depth, k.max_depth(), v.max_depth()});
  auto sys = detail::build_invariance_system(g, depth);
  sys.lp.objective.assign(sys.cells.size(), Rational(0));
  for (std::size_t i = 0; i < sys.cells.size(); ++i) {
    if (k.contains_cylinder(sys.cells[i])) sys.lp.objective[i] += 1;
    if (v.contains_cylinder(sys.cells[i])) sys.lp.objective[i] -= 1;
  }
  auto res = solve_lp(sys.lp);
  if (res.status != LPResult::Optimal || res.value <= 0) return std::nullopt;
  return detail::vector_from(sys, g.space(), res.x);
}

struct MgEmptyOutcome {
  bool found = false;
  std::size_t depth = 0;
  std::vector<FarkasEntry> farkas;
};

// Scan depths 1..max_depth for an infeasibility certificate of the
// invariant-measure polytope. Feasibility at every depth is reported as
// unknown: it does not prove M(G) is nonempty, so the tool never claims it.
inline MgEmptyOutcome mg_empty_certificate(const GroupoidPresentation& g,
                                           std::size_t max_depth) {
  MgEmptyOutcome out;
  std::size_t last = 0;
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::size_t raised = std::max(d, detail::invariance_floor(g));
    if (raised == last) continue; // auto-raised depth already solved
    last = raised;
    auto lp = invariance_lp(g, raised);
    if (!lp.feasible) {
      out.found = true;
      out.depth = lp.depth;
      out.farkas = lp.farkas;
      return out;
    }
  }
  return out;
}

// Re-evaluate a named Farkas certificate against the regenerated constraint
// system; used by report verification.
inline bool recheck_invariance_farkas(const GroupoidPresentation& g, std::size_t depth,
                                      const std::vector<FarkasEntry>& entries) {
  auto sys = detail::build_invariance_system(g, depth);
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < sys.lp.rows.size(); ++i) by_name[sys.lp.rows[i].name] = i;
  std::vector<Rational> y(sys.lp.rows.size(), Rational(0));
  for (const auto& e : entries) {
    auto it = by_name.find(e.row);
    if (it == by_name.end()) return false;
    y[it->second] = e.coeff;
  }
  return check_farkas(sys.lp, y);
}

} // namespace ample
