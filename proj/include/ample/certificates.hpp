#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/clopen.hpp"
#include "ample/prefix_exchange.hpp"

namespace ample {

// Witness for subject < target: bisection pieces whose sources cover the
// subject and whose ranges sit pairwise disjoint inside the target. Sources
// may overlap; ranges never do.
struct Transporter {
  struct Piece {
    std::string label; // generator-word provenance
    PrefixExchange map;
  };
  Clopen subject;
  Clopen target;
  std::vector<Piece> pieces;
};

inline bool verify_transporter(const Transporter& c) {
  if (!c.subject.space() || !c.target.space()) return false;
  if (!same_space(c.subject.space(), c.target.space())) return false;
  Clopen covered = Clopen::empty(c.subject.space());
  for (const auto& p : c.pieces) {
    if (!same_space(p.map.space(), c.subject.space())) return false;
    if (p.map.validate()) return false;
    covered = union_of(covered, p.map.source());
  }
  if (!subset_of(c.subject, covered)) return false;
  std::vector<Clopen> ranges;
  for (const auto& p : c.pieces) ranges.push_back(p.map.range());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (!subset_of(ranges[i], c.target)) return false;
    for (std::size_t j = i + 1; j < ranges.size(); ++j)
      if (!disjoint(ranges[i], ranges[j])) return false;
  }
  return true;
}

// Witness for (a_1..a_n) <= (b_1..b_m) on tuples: each a_i covered by the
// sources of its entries, and for each target slot the ranges of everything
// sent there are pairwise disjoint inside b_k.
struct TupleCertificate {
  struct Entry {
    int source_index = 0; // into subject
    int target_index = 0; // into target
    std::string label;
    PrefixExchange map;
  };
  std::vector<Clopen> subject;
  std::vector<Clopen> target;
  std::vector<Entry> entries;
};

inline bool verify_tuple(const TupleCertificate& c) {
  if (c.subject.empty() || c.target.empty()) return false;
  SubshiftPtr ss = c.subject.front().space();
  for (const auto& a : c.subject)
    if (!same_space(a.space(), ss)) return false;
  for (const auto& b : c.target)
    if (!same_space(b.space(), ss)) return false;
  for (const auto& e : c.entries) {
    if (e.source_index < 0 || e.source_index >= static_cast<int>(c.subject.size()))
      return false;
    if (e.target_index < 0 || e.target_index >= static_cast<int>(c.target.size()))
      return false;
    if (e.map.validate()) return false;
  }
  for (int i = 0; i < static_cast<int>(c.subject.size()); ++i) {
    Clopen covered = Clopen::empty(ss);
    for (const auto& e : c.entries)
      if (e.source_index == i) covered = union_of(covered, e.map.source());
    if (!subset_of(c.subject[static_cast<std::size_t>(i)], covered)) return false;
  }
  for (int k = 0; k < static_cast<int>(c.target.size()); ++k) {
    std::vector<Clopen> ranges;
    for (const auto& e : c.entries)
      if (e.target_index == k) ranges.push_back(e.map.range());
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      if (!subset_of(ranges[i], c.target[static_cast<std::size_t>(k)])) return false;
      for (std::size_t j = i + 1; j < ranges.size(); ++j)
        if (!disjoint(ranges[i], ranges[j])) return false;
    }
  }
  return true;
}

// The exact-tiling check defining the type-semigroup relation: sources tile
// each a_i exactly and ranges tile each b_k exactly.
inline bool verify_tuple_exact(const TupleCertificate& c) {
  if (!verify_tuple(c)) return false;
  SubshiftPtr ss = c.subject.front().space();
  for (int i = 0; i < static_cast<int>(c.subject.size()); ++i) {
    std::vector<Clopen> sources;
    for (const auto& e : c.entries)
      if (e.source_index == i) sources.push_back(e.map.source());
    Clopen covered = Clopen::empty(ss);
    for (std::size_t x = 0; x < sources.size(); ++x) {
      for (std::size_t y = x + 1; y < sources.size(); ++y)
        if (!disjoint(sources[x], sources[y])) return false;
      covered = union_of(covered, sources[x]);
    }
    if (!(covered == c.subject[static_cast<std::size_t>(i)])) return false;
  }
  for (int k = 0; k < static_cast<int>(c.target.size()); ++k) {
    Clopen covered = Clopen::empty(ss);
    for (const auto& e : c.entries)
      if (e.target_index == k) covered = union_of(covered, e.map.range());
    if (!(covered == c.target[static_cast<std::size_t>(k)])) return false;
  }
  return true;
}

// Transitivity witness composition: pieces of the composite are U.W per
// matching middle slot. Works for tuples and, below, for transporters.
inline TupleCertificate compose_certificates(const TupleCertificate& c1,
                                             const TupleCertificate& c2,
                                             std::size_t max_pair_length = kDefaultMaxPairLength) {
  if (c1.target.size() != c2.subject.size())
    throw std::invalid_argument("certificate composition: middle tuples differ in length");
  for (std::size_t l = 0; l < c1.target.size(); ++l)
    if (!(c1.target[l] == c2.subject[l]))
      throw std::invalid_argument("certificate composition: middle tuples differ");
  TupleCertificate out;
  out.subject = c1.subject;
  out.target = c2.target;
  for (const auto& w : c1.entries) {
    for (const auto& u : c2.entries) {
      if (u.source_index != w.target_index) continue;
      PrefixExchange composed = compose(u.map, w.map, max_pair_length);
      if (composed.is_empty_map()) continue;
      out.entries.push_back({w.source_index, u.target_index,
                             u.label == "id" ? w.label
                             : w.label == "id" ? u.label
                                               : u.label + "*" + w.label,
                             std::move(composed)});
    }
  }
  return out;
}

inline Transporter transporter_from_tuple(const TupleCertificate& c) {
  Transporter t;
  t.subject = c.subject.front();
  t.target = c.target.front();
  for (const auto& e : c.entries) t.pieces.push_back({e.label, e.map});
  return t;
}

inline TupleCertificate tuple_from_transporter(const Transporter& c) {
  TupleCertificate t;
  t.subject = {c.subject};
  t.target = {c.target};
  for (const auto& p : c.pieces) t.entries.push_back({0, 0, p.label, p.map});
  return t;
}

inline Transporter compose_certificates(const Transporter& c1, const Transporter& c2,
                                        std::size_t max_pair_length = kDefaultMaxPairLength) {
  if (!(c1.target == c2.subject))
    throw std::invalid_argument("certificate composition: middle clopen differs");
  return transporter_from_tuple(
      compose_certificates(tuple_from_transporter(c1), tuple_from_transporter(c2),
                           max_pair_length));
}

// Single-bisection normal form: partition the subject along the pieces
// (first listed piece wins on overlaps), restrict, and glue. The glued
// exchange is a valid bisection because the source cells are disjoint and
// the ranges were disjoint already.
inline Transporter normalize_certificate(const Transporter& c) {
  Clopen remaining = c.subject;
  std::vector<PrefixExchange::Pair> glued;
  std::string label;
  for (const auto& p : c.pieces) {
    if (remaining.is_empty()) break;
    Clopen part = intersect(remaining, p.map.source());
    if (part.is_empty()) continue;
    PrefixExchange r = p.map.restrict_to(part);
    for (const auto& pr : r.pairs()) glued.push_back(pr);
    remaining = difference(remaining, part);
    if (!label.empty()) label += "|";
    label += p.label;
  }
  Transporter out;
  out.subject = c.subject;
  out.target = c.target;
  out.pieces.push_back({label.empty() ? "id" : label,
                        PrefixExchange(c.subject.space(), std::move(glued))});
  return out;
}

// Split every pair of every piece until its longer word reaches depth d.
// The refined certificate denotes the same point map.
inline Transporter refine_certificate(const Transporter& c, std::size_t d) {
  Transporter out;
  out.subject = c.subject;
  out.target = c.target;
  const Subshift& ss = *c.subject.space();
  for (const auto& p : c.pieces) {
    std::vector<PrefixExchange::Pair> pairs;
    for (const auto& [u, v] : p.map.pairs()) {
      std::size_t have = std::max(u.size(), v.size());
      std::size_t ext = have >= d ? 0 : d - have;
      // all admissible extensions of the pair by ext symbols
      std::vector<Word> suffixes{Word{}};
      for (std::size_t step = 0; step < ext; ++step) {
        std::vector<Word> next;
        for (const auto& s : suffixes) {
          Word us = u.concat(s);
          std::uint64_t m = ss.followers(us);
          while (m) {
            int a = std::countr_zero(m);
            m &= m - 1;
            next.push_back(s.append(static_cast<Symbol>(a)));
          }
        }
        suffixes = std::move(next);
      }
      for (const auto& s : suffixes) pairs.push_back({u.concat(s), v.concat(s)});
    }
    // keep the split pairs as-is: sibling merge would undo the refinement
    out.pieces.push_back({p.label, PrefixExchange::from_pairs_unmerged(
                                       c.subject.space(), std::move(pairs))});
  }
  return out;
}

} // namespace ample
