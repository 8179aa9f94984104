#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ample/search.hpp"

namespace ample {

// An element of the type semigroup's underlying set: an ordered tuple of
// clopens over one subshift. Empty entries are permitted; concatenation is
// the semigroup addition.
using ClopenTuple = std::vector<Clopen>;

inline ClopenTuple tuple_add(const ClopenTuple& a, const ClopenTuple& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  require_same_space(a.front().space(), b.front().space());
  ClopenTuple out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline ClopenTuple tuple_scale(std::size_t n, const ClopenTuple& a) {
  ClopenTuple out;
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), a.begin(), a.end());
  return out;
}

namespace detail {

// zero-length tuples act as the class of the empty set
inline ClopenTuple nonempty_tuple(const GroupoidPresentation& g, ClopenTuple t) {
  if (t.empty()) t.push_back(Clopen::empty(g.space()));
  return t;
}

} // namespace detail

// [a] <= [b] in the type semigroup. For compact open tuples the search
// certificate is exact, and one decision procedure serves V(G) and the
// clopen fragment of W(G).
inline TupleOutcome tuple_leq(const GroupoidPresentation& g, const ClopenTuple& a,
                              const ClopenTuple& b, const SearchConfig& cfg = {}) {
  return search_compare_tuple(g, detail::nonempty_tuple(g, a), detail::nonempty_tuple(g, b),
                              cfg);
}

inline TupleOutcome tuple_leq(const GroupoidPresentation& g, const ElementEnumeration& en,
                              const ClopenTuple& a, const ClopenTuple& b,
                              const SearchConfig& cfg = {}) {
  return search_compare_tuple(g, en, detail::nonempty_tuple(g, a),
                              detail::nonempty_tuple(g, b), cfg);
}

// a ~ b: one certificate whose sources tile each a_i exactly and whose
// ranges tile each b_k exactly. The inverse certificate witnesses b ~ a.
inline TupleOutcome type_equivalent(const GroupoidPresentation& g, const ElementEnumeration& en,
                                    const ClopenTuple& a, const ClopenTuple& b,
                                    const SearchConfig& cfg = {}) {
  TupleOutcome out;
  out.bound = en.bound;
  if (a.empty() || b.empty())
    throw std::invalid_argument("tuples must be non-empty sequences of clopens");
  for (const auto& c : a) require_same_space(g.space(), c.space());
  for (const auto& c : b) require_same_space(g.space(), c.space());

  // equivalence needs both inequalities; refute either direction by measure
  if (auto w = detail::measure_refutation(g, a, b, cfg)) {
    out.kind = OutcomeKind::RefutedMeasure;
    out.measure = std::move(w);
    return out;
  }
  if (auto w = detail::measure_refutation(g, b, a, cfg)) {
    out.kind = OutcomeKind::RefutedMeasure;
    out.measure = std::move(w);
    return out;
  }

  detail::TupleSearcher searcher(g, en, a, b, cfg, /*exact_tiling=*/true);
  auto cert = searcher.run();
  if (cert) {
    if (!verify_tuple_exact(*cert))
      throw std::logic_error("internal: exact certificate fails verification");
    out.kind = OutcomeKind::Verified;
    out.certificate = std::move(cert);
    return out;
  }
  if (searcher.explored_completely() && en.stabilized && !en.capped) {
    out.kind = OutcomeKind::RefutedExhausted;
    out.exhaustion = ExhaustionInfo{en.elements.size(), en.stabilized_at};
    return out;
  }
  out.kind = OutcomeKind::Unknown;
  out.note = searcher.budget_exhausted() ? "node budget exhausted" : "bound reached";
  return out;
}

inline TupleOutcome type_equivalent(const GroupoidPresentation& g, const ClopenTuple& a,
                                    const ClopenTuple& b, const SearchConfig& cfg = {}) {
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  return type_equivalent(g, en, a, b, cfg);
}

// 2[a] <= [a]: proper infiniteness of the class of a.
inline TupleOutcome properly_infinite(const GroupoidPresentation& g, const ClopenTuple& a,
                                      const SearchConfig& cfg = {}) {
  return tuple_leq(g, tuple_add(a, a), a, cfg);
}

inline TupleOutcome properly_infinite(const GroupoidPresentation& g,
                                      const ElementEnumeration& en, const ClopenTuple& a,
                                      const SearchConfig& cfg = {}) {
  return tuple_leq(g, en, tuple_add(a, a), a, cfg);
}

struct UnperforationProbe {
  std::size_t n = 1;
  TupleOutcome amplified; // (n+1) a <= n b
  TupleOutcome plain;     // a <= b
  // amplified comparison verified while the plain one was refuted: the
  // almost-unperforation conclusion fails at this bound
  bool perforation_alarm = false;
};

inline UnperforationProbe unperforation_probe(const GroupoidPresentation& g,
                                              const ClopenTuple& a, const ClopenTuple& b,
                                              std::size_t n, const SearchConfig& cfg = {}) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  UnperforationProbe probe;
  probe.n = n;
  probe.amplified = tuple_leq(g, en, tuple_scale(n + 1, a), tuple_scale(n, b), cfg);
  probe.plain = tuple_leq(g, en, a, b, cfg);
  probe.perforation_alarm =
      probe.amplified.kind == OutcomeKind::Verified &&
      (probe.plain.kind == OutcomeKind::RefutedMeasure ||
       probe.plain.kind == OutcomeKind::RefutedExhausted);
  return probe;
}

} // namespace ample
