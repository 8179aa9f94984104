#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/measures.hpp"
#include "ample/simplex.hpp"
#include "ample/type_semigroup.hpp"

namespace ample {

// Finitely presented preordered abelian monoid: named generators and
// inequalities with nonnegative integer coefficients.
struct MonoidPresentation {
  struct Side {
    std::vector<std::pair<int, long>> terms; // (generator index, coefficient)
  };
  struct Relation {
    std::string name;
    Side lhs, rhs; // lhs <= rhs
  };
  std::vector<std::string> generators;
  std::vector<Relation> relations;

  int generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i);
    return -1;
  }

  void check() const {
    if (generators.empty()) throw std::invalid_argument("monoid needs at least one generator");
    for (const auto& r : relations)
      for (const auto* side : {&r.lhs, &r.rhs})
        for (const auto& [g, c] : side->terms) {
          if (g < 0 || g >= static_cast<int>(generators.size()))
            throw std::invalid_argument("relation references unknown generator");
          if (c < 0) throw std::invalid_argument("relation coefficients must be nonnegative");
        }
  }
};

struct StateResult {
  bool feasible = false;
  std::vector<Rational> values;    // per generator, when feasible
  std::vector<FarkasEntry> farkas; // when infeasible
};

namespace detail {

inline LinearProgram state_lp_program(const MonoidPresentation& m, int target) {
  LinearProgram lp;
  lp.num_vars = static_cast<int>(m.generators.size());
  for (const auto& r : m.relations) {
    auto& row = lp.add_row(r.name, LinearProgram::LessEq, 0);
    for (const auto& [g, c] : r.lhs.terms) row.coeff[static_cast<std::size_t>(g)] += c;
    for (const auto& [g, c] : r.rhs.terms) row.coeff[static_cast<std::size_t>(g)] -= c;
  }
  auto& norm = lp.add_row("normalize(" + m.generators[static_cast<std::size_t>(target)] + ")",
                          LinearProgram::Eq, 1);
  norm.coeff[static_cast<std::size_t>(target)] = 1;
  return lp;
}

} // namespace detail

// Finite-valued normalized states on the presented fragment are exactly the
// solutions of this rational LP: f >= 0, additive over relations, f(y) = 1.
// An optional objective picks out different vertices of the state polytope.
inline StateResult state_lp(const MonoidPresentation& m, const std::string& target,
                            const std::vector<Rational>& objective = {}) {
  m.check();
  int t = m.generator_index(target);
  if (t < 0) throw std::invalid_argument("target '" + target + "' is not a generator");
  LinearProgram lp = detail::state_lp_program(m, t);
  lp.objective = objective;
  auto res = solve_lp(lp);
  StateResult out;
  if (res.status == LPResult::Optimal) {
    out.feasible = true;
    out.values = res.x;
  } else if (res.status == LPResult::Unbounded) {
    // the state set is feasible but the probe objective is unbounded;
    // re-solve for a plain vertex
    LinearProgram plain = detail::state_lp_program(m, t);
    auto res2 = solve_lp(plain);
    out.feasible = true;
    out.values = res2.x;
  } else {
    out.feasible = false;
    for (std::size_t i = 0; i < res.farkas.size(); ++i)
      if (res.farkas[i] != 0) out.farkas.push_back({lp.rows[i].name, res.farkas[i]});
  }
  return out;
}

inline bool recheck_state_farkas(const MonoidPresentation& m, const std::string& target,
                                 const std::vector<FarkasEntry>& entries) {
  int t = m.generator_index(target);
  if (t < 0) return false;
  LinearProgram lp = detail::state_lp_program(m, t);
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) by_name[lp.rows[i].name] = i;
  std::vector<Rational> y(lp.rows.size(), Rational(0));
  for (const auto& e : entries) {
    auto it = by_name.find(e.row);
    if (it == by_name.end()) return false;
    y[it->second] = e.coeff;
  }
  return check_farkas(lp, y);
}

// Evaluate a state on a tuple-combination side; used by soundness tests.
inline Rational evaluate_side(const MonoidPresentation::Side& side,
                              const std::vector<Rational>& values) {
  Rational acc = 0;
  for (const auto& [g, c] : side.terms) acc += Rational(c) * values[static_cast<std::size_t>(g)];
  return acc;
}

struct FactsConfig {
  long max_coeff = 3;
  std::size_t max_arity = 4;
};

struct ExtractedFacts {
  MonoidPresentation monoid;
  std::vector<ClopenTuple> tuples; // aligned with monoid.generators
  std::vector<TupleCertificate> certificates;
};

// Bridge from verified comparison certificates to the abstract layer:
// generators are the given tuples, relations are all c*t_i <= d*t_j whose
// search certificates verify within the bound.
inline ExtractedFacts extract_monoid_facts(const GroupoidPresentation& g,
                                           const std::vector<ClopenTuple>& tuples,
                                           const SearchConfig& cfg = {},
                                           const FactsConfig& facts = {}) {
  if (tuples.empty()) throw std::invalid_argument("empty presentation: no tuples given");
  for (const auto& t : tuples)
    if (t.size() > facts.max_arity)
      throw std::invalid_argument("tuple arity exceeds the configured cap");
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  ExtractedFacts out;
  out.tuples = tuples;
  for (std::size_t i = 0; i < tuples.size(); ++i)
    out.monoid.generators.push_back("t" + std::to_string(i));
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      for (long c = 1; c <= facts.max_coeff; ++c) {
        for (long d = 1; d <= facts.max_coeff; ++d) {
          auto res = tuple_leq(g, en, tuple_scale(static_cast<std::size_t>(c), tuples[i]),
                               tuple_scale(static_cast<std::size_t>(d), tuples[j]), cfg);
          if (res.kind != OutcomeKind::Verified) continue;
          MonoidPresentation::Relation rel;
          rel.name = std::to_string(c) + "*t" + std::to_string(i) + "<=" + std::to_string(d) +
                     "*t" + std::to_string(j);
          rel.lhs.terms = {{static_cast<int>(i), c}};
          rel.rhs.terms = {{static_cast<int>(j), d}};
          out.monoid.relations.push_back(std::move(rel));
          out.certificates.push_back(std::move(*res.certificate));
        }
      }
    }
  }
  return out;
}

} // namespace ample
