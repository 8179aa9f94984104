#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ample/certificates.hpp"
#include "ample/measures.hpp"
#include "ample/presentation.hpp"

namespace ample {

struct SearchConfig {
  int bound = 6;
  std::size_t max_pair_length = kDefaultMaxPairLength;
  std::size_t node_budget = 200000;
  std::size_t max_lp_cells = 4096; // refutation LP is skipped above this size
  std::optional<std::size_t> lp_depth;
  // multi-subject instances retry with targets pre-split across the subjects
  // up to this many extra levels
  std::size_t balance_levels = 4;
  // pin the cell refinement depth instead of the adaptive cap
  std::optional<std::size_t> depth_cap;
  int threads = 1;
};

enum class OutcomeKind { Verified, RefutedMeasure, RefutedExhausted, Unknown };

inline const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Verified: return "verified";
    case OutcomeKind::RefutedMeasure: return "refuted-measure";
    case OutcomeKind::RefutedExhausted: return "refuted-exhausted";
    case OutcomeKind::Unknown: return "unknown";
  }
  return "?";
}

struct MeasureWitness {
  MeasureVector witness;
  Rational lhs; // measure of the subject side
  Rational rhs; // measure of the target side; lhs > rhs
};

struct ExhaustionInfo {
  std::size_t element_count = 0;
  int stabilized_at = -1;
};

struct TupleOutcome {
  OutcomeKind kind = OutcomeKind::Unknown;
  std::optional<TupleCertificate> certificate;
  std::optional<MeasureWitness> measure;
  std::optional<ExhaustionInfo> exhaustion;
  int bound = 0;
  std::string note;
};

struct CompareOutcome {
  OutcomeKind kind = OutcomeKind::Unknown;
  std::optional<Transporter> certificate;
  std::optional<MeasureWitness> measure;
  std::optional<ExhaustionInfo> exhaustion;
  int bound = 0;
  std::string note;
};

namespace detail {

// Adaptive refutation depth: deepest word in play plus the largest generator
// stretch plus two, clamped so the LP stays tractable.
inline std::size_t refutation_depth(const GroupoidPresentation& g,
                                    const std::vector<Clopen>& subject,
                                    const std::vector<Clopen>& target,
                                    const SearchConfig& cfg) {
  if (cfg.lp_depth) return *cfg.lp_depth;
  std::size_t d = 0;
  for (const auto& c : subject) d = std::max(d, c.max_depth());
  for (const auto& c : target) d = std::max(d, c.max_depth());
  d += g.max_stretch() + 2;
  d = std::max(d, invariance_floor(g));
  // clamp by cell count
  std::size_t k = static_cast<std::size_t>(g.space()->alphabet_size());
  std::size_t floor_depth = invariance_floor(g);
  while (d > floor_depth) {
    // depth-d cell count is at most k^d; shrink while clearly oversized
    double est = 1;
    for (std::size_t i = 0; i < d; ++i) {
      est *= static_cast<double>(k);
      if (est > static_cast<double>(cfg.max_lp_cells)) break;
    }
    if (est <= static_cast<double>(cfg.max_lp_cells)) break;
    --d;
  }
  return d;
}

// Invariant measure making the subject tuple strictly heavier than the
// target tuple, when one exists at the adaptive depth.
inline std::optional<MeasureWitness> measure_refutation(const GroupoidPresentation& g,
                                                        const std::vector<Clopen>& subject,
                                                        const std::vector<Clopen>& target,
                                                        const SearchConfig& cfg) {
  std::size_t depth = refutation_depth(g, subject, target, cfg);
  for (const auto& c : subject)
    if (c.max_depth() > depth) return std::nullopt; // inexpressible, skip
  for (const auto& c : target)
    if (c.max_depth() > depth) return std::nullopt;
  if (!invariance_feasible_cached(g, depth)) return std::nullopt;
  auto sys = build_invariance_system(g, depth);
  sys.lp.objective.assign(sys.cells.size(), Rational(0));
  for (std::size_t i = 0; i < sys.cells.size(); ++i) {
    for (const auto& c : subject)
      if (c.contains_cylinder(sys.cells[i])) sys.lp.objective[i] += 1;
    for (const auto& c : target)
      if (c.contains_cylinder(sys.cells[i])) sys.lp.objective[i] -= 1;
  }
  auto res = solve_lp(sys.lp);
  if (res.status != LPResult::Optimal || res.value <= 0) return std::nullopt;
  MeasureWitness w;
  w.witness = vector_from(sys, g.space(), res.x);
  w.lhs = 0;
  w.rhs = 0;
  for (const auto& c : subject) w.lhs += w.witness.of(c);
  for (const auto& c : target) w.rhs += w.witness.of(c);
  return w;
}

struct Cell {
  int src;
  Word w;
};

// Depth-first search for the lexicographically least certificate: cells in
// (tuple index, shortlex) order, moves per cell in (element, target slot)
// order, splitting a cell into its children only after every direct
// assignment failed.
class TupleSearcher {
public:
  TupleSearcher(const GroupoidPresentation& g, const ElementEnumeration& en,
                const std::vector<Clopen>& subject, const std::vector<Clopen>& target,
                const SearchConfig& cfg, bool exact_tiling = false)
      : g_(g), en_(en), subject_(subject), target_(target), cfg_(cfg), exact_(exact_tiling) {
    std::size_t maxlen = 1;
    for (const auto& e : en_.elements) maxlen = std::max(maxlen, e.map.max_word_length());
    std::size_t ds = 0, dt = 0;
    for (const auto& c : subject_) ds = std::max(ds, c.max_depth());
    for (const auto& c : target_) dt = std::max(dt, c.max_depth());
    depth_cap_ = cfg.depth_cap ? std::max(*cfg.depth_cap, ds)
                               : std::max(ds, dt + maxlen) + 2;
    committed_.resize(target_.size());
  }

  // nullopt: no certificate found (exhausted_ tells whether the search space
  // was fully explored)
  std::optional<TupleCertificate> run() {
    std::vector<Cell> cells;
    for (int i = 0; i < static_cast<int>(subject_.size()); ++i)
      for (const auto& w : subject_[static_cast<std::size_t>(i)].words())
        cells.push_back({i, w});
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
      if (a.src != b.src) return a.src < b.src;
      return shortlex_less(a.w, b.w);
    });
    bool ok = solve(cells, 0);
    complete_ = !budget_hit_;
    if (!ok) return std::nullopt;
    return assemble();
  }

  bool budget_exhausted() const { return budget_hit_; }
  bool explored_completely() const { return complete_; }

private:
  struct Assign {
    int src;
    Word cell;
    int element;
    int k;
    Word image;
  };

  bool solve(std::vector<Cell>& cells, std::size_t idx) {
    if (idx == cells.size()) {
      if (!exact_) return true;
      // exact tiling: the committed images must exhaust every target slot
      for (std::size_t k = 0; k < target_.size(); ++k) {
        Clopen covered = Clopen::canonical(g_.space(), committed_[k]);
        if (!(covered == target_[k])) return false;
      }
      return true;
    }
    Cell cell = cells[idx];
    for (int ei = 0; ei < static_cast<int>(en_.elements.size()); ++ei) {
      const auto& e = en_.elements[static_cast<std::size_t>(ei)];
      // sources form a prefix code: at most one pair applies to the cell
      const PrefixExchange::Pair* hit = nullptr;
      for (const auto& p : e.map.pairs())
        if (is_prefix_of(p.first, cell.w)) {
          hit = &p;
          break;
        }
      if (!hit) continue;
      Word image = hit->second.concat(cell.w.suffix_from(hit->first.size()));
      for (int k = 0; k < static_cast<int>(target_.size()); ++k) {
        if (++nodes_ > cfg_.node_budget) {
          budget_hit_ = true;
          return false;
        }
        if (!feasible(image, k)) continue;
        committed_[static_cast<std::size_t>(k)].push_back(image);
        assignment_.push_back({cell.src, cell.w, ei, k, image});
        if (solve(cells, idx + 1)) return true;
        if (budget_hit_) return false;
        committed_[static_cast<std::size_t>(k)].pop_back();
        assignment_.pop_back();
      }
    }
    if (cell.w.size() < depth_cap_) {
      std::uint64_t m = g_.space()->followers(cell.w);
      std::vector<Cell> kids;
      while (m) {
        int a = std::countr_zero(m);
        m &= m - 1;
        kids.push_back({cell.src, cell.w.append(static_cast<Symbol>(a))});
      }
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(idx));
      cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(idx), kids.begin(), kids.end());
      bool ok = solve(cells, idx);
      if (ok) return true;
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(idx),
                  cells.begin() + static_cast<std::ptrdiff_t>(idx + kids.size()));
      cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(idx), cell);
      if (budget_hit_) return false;
    }
    return false;
  }

  bool feasible(const Word& image, int k) const {
    if (!target_[static_cast<std::size_t>(k)].contains_cylinder(image)) return false;
    for (const auto& c : committed_[static_cast<std::size_t>(k)])
      if (is_prefix_of(c, image) || is_prefix_of(image, c)) return false;
    return true;
  }

  TupleCertificate assemble() const {
    TupleCertificate cert;
    cert.subject = subject_;
    cert.target = target_;
    // merge cells assigned to the same (source, element, slot) back into one
    // piece: the restriction of the element to the union of its cells
    std::vector<std::tuple<int, int, int>> keys;
    for (const auto& a : assignment_) {
      std::tuple<int, int, int> key{a.src, a.element, a.k};
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& [src, ei, k] : keys) {
      std::vector<Word> cells;
      for (const auto& a : assignment_)
        if (a.src == src && a.element == ei && a.k == k) cells.push_back(a.cell);
      Clopen dom = Clopen::canonical(g_.space(), std::move(cells));
      const auto& e = en_.elements[static_cast<std::size_t>(ei)];
      cert.entries.push_back({src, k, e.label, e.map.restrict_to(dom)});
    }
    return cert;
  }

  const GroupoidPresentation& g_;
  const ElementEnumeration& en_;
  const std::vector<Clopen>& subject_;
  const std::vector<Clopen>& target_;
  const SearchConfig& cfg_;
  bool exact_ = false;
  std::size_t depth_cap_ = 0;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  bool complete_ = false;
  std::vector<std::vector<Word>> committed_;
  std::vector<Assign> assignment_;
};

} // namespace detail

// When the joint first-fit search thrashes on a tuple with several subject
// entries, pre-split the target slots one level at a time and deal the cells
// round-robin to the subjects; each subject then gets an easy single-subject
// search against its own region. Conservative (may miss certificates the
// joint search would find) but deterministic and fast, and every result
// re-verifies.
namespace detail {

inline std::optional<TupleCertificate> balanced_tuple_search(
    const GroupoidPresentation& g, const ElementEnumeration& en,
    const std::vector<Clopen>& subject, const std::vector<Clopen>& target,
    const SearchConfig& cfg) {
  const std::size_t n = subject.size();
  for (std::size_t level = 1; level <= cfg.balance_levels; ++level) {
    // allocation item: (slot, cell word)
    std::vector<std::pair<int, Word>> items;
    bool ok = true;
    for (int k = 0; k < static_cast<int>(target.size()); ++k) {
      const Clopen& t = target[static_cast<std::size_t>(k)];
      if (t.is_empty()) continue;
      std::size_t depth = t.max_depth() + level;
      for (const auto& w : t.refine(depth)) items.push_back({k, w});
    }
    if (items.size() < n) continue; // not enough cells to feed every subject
    // region of subject i, grouped per slot
    std::vector<std::vector<std::vector<Word>>> region(
        n, std::vector<std::vector<Word>>(target.size()));
    for (std::size_t t = 0; t < items.size(); ++t)
      region[t % n][static_cast<std::size_t>(items[t].first)].push_back(items[t].second);
    TupleCertificate combined;
    combined.subject = subject;
    combined.target = target;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (subject[i].is_empty()) continue;
      std::vector<Clopen> sub_target;
      std::vector<int> slot_of;
      for (std::size_t k = 0; k < target.size(); ++k) {
        if (region[i][k].empty()) continue;
        sub_target.push_back(Clopen::canonical(g.space(), region[i][k]));
        slot_of.push_back(static_cast<int>(k));
      }
      if (sub_target.empty()) {
        ok = false;
        break;
      }
      std::vector<Clopen> sub_subject{subject[i]};
      TupleSearcher searcher(g, en, sub_subject, sub_target, cfg);
      auto cert = searcher.run();
      if (!cert) {
        ok = false;
        break;
      }
      for (auto& e : cert->entries)
        combined.entries.push_back({static_cast<int>(i),
                                    slot_of[static_cast<std::size_t>(e.target_index)],
                                    e.label, std::move(e.map)});
    }
    if (ok) return combined;
  }
  return std::nullopt;
}

} // namespace detail

// Search for a tuple comparison certificate (a_1..a_n) <= (b_1..b_m) within
// the element ball of the given bound. Outcomes: a verified certificate, a
// measure refutation, completed exhaustion of a stabilized enumeration, or
// unknown.
inline TupleOutcome search_compare_tuple(const GroupoidPresentation& g,
                                         const ElementEnumeration& en,
                                         std::vector<Clopen> subject,
                                         std::vector<Clopen> target,
                                         const SearchConfig& cfg = {},
                                         bool skip_measure = false) {
  TupleOutcome out;
  out.bound = en.bound;
  for (const auto& c : subject) require_same_space(g.space(), c.space());
  for (const auto& c : target) require_same_space(g.space(), c.space());
  if (subject.empty() || target.empty())
    throw std::invalid_argument("tuples must be non-empty sequences of clopens");

  if (!skip_measure) {
    if (auto w = detail::measure_refutation(g, subject, target, cfg)) {
      out.kind = OutcomeKind::RefutedMeasure;
      out.measure = std::move(w);
      return out;
    }
  }

  std::size_t live_subjects = 0;
  for (const auto& c : subject)
    if (!c.is_empty()) ++live_subjects;

  SearchConfig joint = cfg;
  if (live_subjects >= 2) joint.node_budget = std::min<std::size_t>(cfg.node_budget, 20000);
  detail::TupleSearcher searcher(g, en, subject, target, joint);
  auto cert = searcher.run();
  bool joint_complete = searcher.explored_completely();
  if (!cert && live_subjects >= 2) cert = detail::balanced_tuple_search(g, en, subject, target, cfg);
  if (cert) {
    if (!verify_tuple(*cert)) throw std::logic_error("internal: emitted certificate fails verification");
    out.kind = OutcomeKind::Verified;
    out.certificate = std::move(cert);
    return out;
  }
  if (joint_complete && en.stabilized && !en.capped) {
    out.kind = OutcomeKind::RefutedExhausted;
    out.exhaustion = ExhaustionInfo{en.elements.size(), en.stabilized_at};
    return out;
  }
  out.kind = OutcomeKind::Unknown;
  out.note = searcher.budget_exhausted() ? "node budget exhausted" : "bound reached";
  return out;
}

inline TupleOutcome search_compare_tuple(const GroupoidPresentation& g,
                                         std::vector<Clopen> subject,
                                         std::vector<Clopen> target,
                                         const SearchConfig& cfg = {}) {
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  return search_compare_tuple(g, en, std::move(subject), std::move(target), cfg);
}

inline CompareOutcome compare_outcome_from_tuple(TupleOutcome t) {
  CompareOutcome out;
  out.kind = t.kind;
  out.bound = t.bound;
  out.measure = std::move(t.measure);
  out.exhaustion = t.exhaustion;
  out.note = std::move(t.note);
  if (t.certificate) out.certificate = transporter_from_tuple(*t.certificate);
  return out;
}

// K < V search (Def 3.2 comparison witness).
inline CompareOutcome search_compare(const GroupoidPresentation& g, const ElementEnumeration& en,
                                     const Clopen& k, const Clopen& v,
                                     const SearchConfig& cfg = {}, bool skip_measure = false) {
  if (k.is_empty()) {
    CompareOutcome out;
    out.kind = OutcomeKind::Verified;
    out.bound = en.bound;
    out.certificate = Transporter{k, v, {}};
    return out;
  }
  return compare_outcome_from_tuple(
      search_compare_tuple(g, en, {k}, {v}, cfg, skip_measure));
}

inline CompareOutcome search_compare(const GroupoidPresentation& g, const Clopen& k,
                                     const Clopen& v, const SearchConfig& cfg = {}) {
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  return search_compare(g, en, k, v, cfg);
}

struct ParadoxOutcome {
  OutcomeKind kind = OutcomeKind::Unknown;
  Clopen v1, v2;
  std::optional<Transporter> c1, c2;
  std::optional<MeasureWitness> measure;
  std::optional<ExhaustionInfo> exhaustion;
  int bound = 0;
  std::string note;
};

namespace detail {

// Default disjoint halves: descend along first admissible children from the
// lexicographically first cylinder of O until the tree branches, then take
// the first two children.
inline std::optional<std::pair<Clopen, Clopen>> default_halves(const Clopen& o,
                                                               std::size_t depth_cap = 24) {
  if (o.is_empty()) return std::nullopt;
  const Subshift& ss = *o.space();
  Word w = o.words().front();
  while (w.size() < depth_cap) {
    std::uint64_t m = ss.followers(w);
    if (std::popcount(m) >= 2) {
      int a = std::countr_zero(m);
      m &= m - 1;
      int b = std::countr_zero(m);
      return std::make_pair(Clopen::cylinder(o.space(), w.append(static_cast<Symbol>(a))),
                            Clopen::cylinder(o.space(), w.append(static_cast<Symbol>(b))));
    }
    w = w.append(static_cast<Symbol>(std::countr_zero(m)));
  }
  return std::nullopt;
}

} // namespace detail

// (2,1)-paradoxicality of O: disjoint non-empty V1, V2 inside O with
// verified transporters O < V1 and O < V2. The measure channel refutes
// outright: an invariant measure with mu(O) > 0 forbids any such pair.
inline ParadoxOutcome search_paradoxical(const GroupoidPresentation& g,
                                         const ElementEnumeration& en, const Clopen& o,
                                         const SearchConfig& cfg = {},
                                         std::optional<std::pair<Clopen, Clopen>> halves = {}) {
  if (o.is_empty()) throw std::invalid_argument("search_paradoxical requires non-empty O");
  ParadoxOutcome out;
  out.bound = en.bound;

  if (auto w = detail::measure_refutation(g, {o}, {}, cfg)) {
    // objective was mu(O) alone; positivity refutes 2 mu(O) <= mu(O)
    out.kind = OutcomeKind::RefutedMeasure;
    out.measure = MeasureWitness{std::move(w->witness), 2 * w->lhs, w->lhs};
    return out;
  }

  if (!halves) halves = detail::default_halves(o);
  if (halves) {
    out.v1 = halves->first;
    out.v2 = halves->second;
    CompareOutcome a = search_compare(g, en, o, out.v1, cfg, /*skip_measure=*/true);
    CompareOutcome b = search_compare(g, en, o, out.v2, cfg, /*skip_measure=*/true);
    if (a.kind == OutcomeKind::Verified && b.kind == OutcomeKind::Verified) {
      out.kind = OutcomeKind::Verified;
      out.c1 = std::move(a.certificate);
      out.c2 = std::move(b.certificate);
      return out;
    }
  }

  // split-independent fallback: (O, O) <= (O), from whose certificate the
  // halves are read off
  TupleOutcome t = search_compare_tuple(g, en, {o, o}, {o}, cfg, /*skip_measure=*/true);
  if (t.kind == OutcomeKind::Verified) {
    const TupleCertificate& cert = *t.certificate;
    Transporter t1, t2;
    t1.subject = o;
    t2.subject = o;
    Clopen r1 = Clopen::empty(o.space());
    Clopen r2 = Clopen::empty(o.space());
    for (const auto& e : cert.entries) {
      if (e.source_index == 0) {
        t1.pieces.push_back({e.label, e.map});
        r1 = union_of(r1, e.map.range());
      } else {
        t2.pieces.push_back({e.label, e.map});
        r2 = union_of(r2, e.map.range());
      }
    }
    t1.target = r1;
    t2.target = r2;
    out.kind = OutcomeKind::Verified;
    out.v1 = std::move(r1);
    out.v2 = std::move(r2);
    if (!verify_transporter(t1) || !verify_transporter(t2))
      throw std::logic_error("internal: paradox halves fail verification");
    out.c1 = std::move(t1);
    out.c2 = std::move(t2);
    return out;
  }
  out.kind = t.kind;
  out.measure = std::move(t.measure);
  out.exhaustion = t.exhaustion;
  out.note = std::move(t.note);
  return out;
}

inline ParadoxOutcome search_paradoxical(const GroupoidPresentation& g, const Clopen& o,
                                         const SearchConfig& cfg = {},
                                         std::optional<std::pair<Clopen, Clopen>> halves = {}) {
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  return search_paradoxical(g, en, o, cfg, std::move(halves));
}

struct ScanEntry {
  Word cylinder;
  ParadoxOutcome outcome;
};

struct ScanReport {
  std::vector<ScanEntry> entries;
  bool all_verified = false;
};

// Paradoxicality of every admissible cylinder of depth <= d. All-verified is
// Matui pure infiniteness at this resolution. Entries are independent and
// may run on several threads; the report order is fixed.
inline ScanReport purely_infinite_scan(const GroupoidPresentation& g, std::size_t d,
                                       const SearchConfig& cfg = {}) {
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  std::vector<Word> cylinders;
  for (std::size_t depth = 0; depth <= d; ++depth)
    for (const auto& w : Clopen::whole(g.space()).refine(depth)) cylinders.push_back(w);

  ScanReport report;
  report.entries.resize(cylinders.size());
  int threads = std::max(1, cfg.threads);
  std::vector<std::future<void>> futs;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cylinders.size()) return;
      Clopen c = Clopen::cylinder(g.space(), cylinders[i]);
      report.entries[i] = {cylinders[i], search_paradoxical(g, en, c, cfg)};
    }
  };
  if (threads == 1) {
    worker();
  } else {
    for (int t = 0; t < threads; ++t) futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }
  report.all_verified = !report.entries.empty();
  for (const auto& e : report.entries)
    if (e.outcome.kind != OutcomeKind::Verified) report.all_verified = false;
  return report;
}

// Union of the images of V under every enumerated element: a monotone lower
// approximation of the orbit saturation r(G V).
inline Clopen orbit_saturation(const GroupoidPresentation& g, const ElementEnumeration& en,
                               const Clopen& v) {
  Clopen s = Clopen::empty(g.space());
  for (const auto& e : en.elements) s = union_of(s, e.map.apply(v));
  return s;
}

inline Clopen orbit_saturation(const GroupoidPresentation& g, const Clopen& v, int bound,
                               std::size_t max_pair_length = kDefaultMaxPairLength) {
  auto en = enumerate_elements(g, bound, max_pair_length);
  return orbit_saturation(g, en, v);
}

struct MinimalityReport {
  enum Status { Verified, NotMinimal, Unknown } status = Unknown;
  std::optional<Word> witness_cylinder; // NotMinimal: cylinder whose orbit closed up early
  std::optional<Clopen> invariant_clopen;
};

// Minimality probe via cylinder reachability: every depth-d cylinder must
// saturate to the whole space. A saturation that is generator-invariant but
// proper is a genuine obstruction.
inline MinimalityReport minimal_check(const GroupoidPresentation& g, std::size_t d,
                                      const SearchConfig& cfg = {}) {
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  MinimalityReport rep;
  bool all_full = true;
  for (const auto& w : Clopen::whole(g.space()).refine(d)) {
    Clopen s = orbit_saturation(g, en, Clopen::cylinder(g.space(), w));
    if (s.is_whole()) continue;
    all_full = false;
    bool invariant = true;
    for (const auto& gen : g.generators()) {
      if (!subset_of(gen.map.apply(s), s) || !subset_of(gen.map.inverse().apply(s), s)) {
        invariant = false;
        break;
      }
    }
    if (invariant) {
      rep.status = MinimalityReport::NotMinimal;
      rep.witness_cylinder = w;
      rep.invariant_clopen = s;
      return rep;
    }
  }
  rep.status = all_full ? MinimalityReport::Verified : MinimalityReport::Unknown;
  return rep;
}

struct FillingOutcome {
  bool verified = false;
  std::vector<Transporter> normalized; // one single-piece certificate per part
  std::vector<PrefixExchange> elements; // E_i with union of E_i W_i the whole space
  std::vector<std::string> labels;
  bool exhausted = false;
  std::string note;
};

// n-filling probe: partition the unit space into n clopen parts, transport
// each part into its W_i (single-bisection normal form), and return the
// inverted bisections, whose images of the W_i cover the space.
inline FillingOutcome n_filling_check(const GroupoidPresentation& g,
                                      const std::vector<Clopen>& ws,
                                      const SearchConfig& cfg = {}) {
  if (ws.empty()) throw std::invalid_argument("need at least one W_i");
  for (const auto& w : ws)
    if (w.is_empty()) throw std::invalid_argument("W_i must be non-empty");
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  FillingOutcome out;
  const std::size_t n = ws.size();
  // deterministic partition of the space into n parts
  std::vector<Clopen> parts;
  if (n == 1) {
    parts.push_back(Clopen::whole(g.space()));
  } else {
    std::size_t depth = 1;
    while (Clopen::whole(g.space()).refine(depth).size() < n && depth < 24) ++depth;
    auto cells = Clopen::whole(g.space()).refine(depth);
    if (cells.size() < n) throw std::invalid_argument("space too small to split into n parts");
    for (std::size_t i = 0; i + 1 < n; ++i)
      parts.push_back(Clopen::cylinder(g.space(), cells[i]));
    std::vector<Word> rest(cells.begin() + static_cast<std::ptrdiff_t>(n - 1), cells.end());
    parts.push_back(Clopen::canonical(g.space(), std::move(rest)));
  }
  Clopen covered = Clopen::empty(g.space());
  for (std::size_t i = 0; i < n; ++i) {
    CompareOutcome c = search_compare(g, en, parts[i], ws[i], cfg);
    if (c.kind != OutcomeKind::Verified) {
      out.verified = false;
      out.exhausted = c.kind == OutcomeKind::RefutedExhausted ||
                      c.kind == OutcomeKind::RefutedMeasure ||
                      (en.stabilized && !en.capped);
      out.note = "part " + std::to_string(i + 1) + ": " + to_string(c.kind);
      return out;
    }
    Transporter norm = normalize_certificate(*c.certificate);
    if (!verify_transporter(norm)) throw std::logic_error("internal: normal form fails verification");
    const auto& piece = norm.pieces.front();
    out.normalized.push_back(norm);
    out.elements.push_back(piece.map.inverse());
    out.labels.push_back("(" + piece.label + ")^-1");
    covered = union_of(covered, out.elements.back().apply(ws[i]));
  }
  out.verified = covered.is_whole();
  if (!out.verified) out.note = "images do not cover the space";
  return out;
}

struct ContractionOutcome {
  enum Status { Verified, Unknown, Exhausted } status = Unknown;
  std::optional<PrefixExchange> witness; // source exactly V, range strictly inside V
  std::string label;
  std::string note;
};

// Single bisection compressing V strictly into itself, produced by
// normalizing a comparison certificate into a proper sub-cylinder of V.
inline ContractionOutcome locally_contracting_witness(const GroupoidPresentation& g,
                                                      const Clopen& v,
                                                      const SearchConfig& cfg = {}) {
  if (v.is_empty()) throw std::invalid_argument("V must be non-empty");
  auto en = enumerate_elements(g, cfg.bound, cfg.max_pair_length);
  ContractionOutcome out;
  // proper non-empty sub-target: first branching child under V's first word
  auto halves = detail::default_halves(v);
  if (!halves) {
    out.status = ContractionOutcome::Unknown;
    out.note = "no proper sub-cylinder found";
    return out;
  }
  Clopen sub = halves->first;
  CompareOutcome c = search_compare(g, en, v, sub, cfg);
  if (c.kind == OutcomeKind::Verified) {
    Transporter norm = normalize_certificate(*c.certificate);
    const auto& piece = norm.pieces.front();
    if (!(piece.map.source() == v) || !subset_of(piece.map.range(), v) ||
        piece.map.range() == v)
      throw std::logic_error("internal: contraction witness malformed");
    out.status = ContractionOutcome::Verified;
    out.witness = piece.map;
    out.label = piece.label;
    return out;
  }
  if (c.kind == OutcomeKind::RefutedMeasure || c.kind == OutcomeKind::RefutedExhausted) {
    out.status = ContractionOutcome::Exhausted;
    out.note = to_string(c.kind);
    return out;
  }
  out.status = ContractionOutcome::Unknown;
  out.note = c.note;
  return out;
}

// Depth-d cylinders on which every generator and inverse acts as a partial
// identity; such cylinders consist of global fixed units. One-sided scan.
inline std::vector<Word> global_fixed_unit_scan(const GroupoidPresentation& g, std::size_t d) {
  std::vector<Word> out;
  for (const auto& w : Clopen::whole(g.space()).refine(d)) {
    Clopen cyl = Clopen::cylinder(g.space(), w);
    bool fixed = true;
    for (const auto& gen : g.generators()) {
      for (const PrefixExchange& m : {gen.map, gen.map.inverse()}) {
        PrefixExchange r = m.restrict_to(cyl);
        for (const auto& [pu, pv] : r.pairs())
          if (!(pu == pv)) {
            fixed = false;
            break;
          }
        if (!fixed) break;
      }
      if (!fixed) break;
    }
    if (fixed) out.push_back(w);
  }
  return out;
}

} // namespace ample
