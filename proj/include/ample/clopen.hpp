#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/subshift.hpp"

namespace ample {

enum class SetRelation { Equal, Subset, Superset, Disjoint, Overlapping };

inline const char* to_string(SetRelation r) {
  switch (r) {
    case SetRelation::Equal: return "equal";
    case SetRelation::Subset: return "subset";
    case SetRelation::Superset: return "superset";
    case SetRelation::Disjoint: return "disjoint";
    case SetRelation::Overlapping: return "overlapping";
  }
  return "?";
}

// Clopen subset of the sequence space, stored as the unique canonical
// antichain of cylinder words: no word a prefix of another, no complete
// sibling family left unmerged, sorted by (length, lex). The empty set is
// the empty word list; the whole space is {epsilon}.
class Clopen {
public:
  Clopen() = default;

  static Clopen empty(SubshiftPtr ss) { return Clopen(std::move(ss), {}); }
  static Clopen whole(SubshiftPtr ss) { return Clopen(std::move(ss), {Word{}}); }

  static Clopen canonical(SubshiftPtr ss, std::vector<Word> words) {
    for (const auto& w : words) {
      std::string bad = ss->find_violation(w);
      if (!bad.empty()) throw std::invalid_argument("inadmissible word: " + bad);
    }
    canonicalize_in_place(*ss, words);
    return Clopen(std::move(ss), std::move(words));
  }

  static Clopen cylinder(SubshiftPtr ss, const Word& w) {
    return canonical(std::move(ss), {w});
  }

  const SubshiftPtr& space() const { return ss_; }
  const std::vector<Word>& words() const { return words_; }
  bool is_empty() const { return words_.empty(); }
  bool is_whole() const { return words_.size() == 1 && words_[0].empty(); }
  std::size_t max_depth() const {
    std::size_t d = 0;
    for (const auto& w : words_) d = std::max(d, w.size());
    return d;
  }

  // N_w subset of this clopen, by prefix containment on the canonical form.
  bool contains_cylinder(const Word& w) const {
    for (const auto& v : words_)
      if (is_prefix_of(v, w)) return true;
    return false;
  }

  bool intersects_cylinder(const Word& w) const {
    for (const auto& v : words_)
      if (is_prefix_of(v, w) || is_prefix_of(w, v)) return true;
    return false;
  }

  friend bool operator==(const Clopen& a, const Clopen& b) {
    return same_space(a.ss_, b.ss_) && a.words_ == b.words_;
  }

  friend Clopen union_of(const Clopen& a, const Clopen& b) {
    require_same_space(a.ss_, b.ss_);
    std::vector<Word> ws = a.words_;
    ws.insert(ws.end(), b.words_.begin(), b.words_.end());
    canonicalize_in_place(*a.ss_, ws);
    return Clopen(a.ss_, std::move(ws));
  }

  friend Clopen intersect(const Clopen& a, const Clopen& b) {
    require_same_space(a.ss_, b.ss_);
    std::vector<Word> ws;
    for (const auto& u : a.words_)
      for (const auto& v : b.words_) {
        if (is_prefix_of(u, v))
          ws.push_back(v);
        else if (is_prefix_of(v, u))
          ws.push_back(u);
      }
    canonicalize_in_place(*a.ss_, ws);
    return Clopen(a.ss_, std::move(ws));
  }

  friend Clopen complement(const Clopen& a) {
    if (a.is_empty()) return Clopen::whole(a.ss_);
    if (a.is_whole()) return Clopen::empty(a.ss_);
    Trie t(a.words_);
    std::vector<Word> out;
    complement_walk(*a.ss_, t, 0, Word{}, out);
    canonicalize_in_place(*a.ss_, out);
    return Clopen(a.ss_, std::move(out));
  }

  friend Clopen difference(const Clopen& a, const Clopen& b) {
    require_same_space(a.ss_, b.ss_);
    return intersect(a, complement(b));
  }

  friend SetRelation relate(const Clopen& a, const Clopen& b) {
    require_same_space(a.ss_, b.ss_);
    if (a.words_ == b.words_) return SetRelation::Equal;
    bool sub = subset_of(a, b);
    bool sup = subset_of(b, a);
    if (sub) return SetRelation::Subset;
    if (sup) return SetRelation::Superset;
    bool meet = false;
    for (const auto& u : a.words_) {
      if (b.intersects_cylinder(u)) {
        meet = true;
        break;
      }
    }
    return meet ? SetRelation::Overlapping : SetRelation::Disjoint;
  }

  // Canonicity makes subset a pure prefix test: every covering of a full
  // subtree has been merged away, so N_u lies in B iff some word of B is a
  // prefix of u.
  friend bool subset_of(const Clopen& a, const Clopen& b) {
    for (const auto& u : a.words_)
      if (!b.contains_cylinder(u)) return false;
    return true;
  }

  friend bool disjoint(const Clopen& a, const Clopen& b) {
    for (const auto& u : a.words_)
      if (b.intersects_cylinder(u)) return false;
    return true;
  }

  // The depth-d admissible words tiling this set; requires d at least the
  // depth of every stored word.
  std::vector<Word> refine(std::size_t d) const {
    std::vector<Word> out;
    for (const auto& w : words_) {
      if (w.size() > d)
        throw std::invalid_argument("refinement depth " + std::to_string(d) +
                                    " below word of length " + std::to_string(w.size()));
      expand(*ss_, w, d, out);
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
  }

  std::string format() const {
    if (words_.empty()) return "{}";
    std::string s = "{";
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (i) s += ",";
      std::string t = ss_->format_word(words_[i]);
      s += t.empty() ? "\"\"" : t;
    }
    return s + "}";
  }

private:
  Clopen(SubshiftPtr ss, std::vector<Word> ws) : ss_(std::move(ss)), words_(std::move(ws)) {}

  struct Trie {
    struct Node {
      std::map<Symbol, int> kids;
      bool terminal = false;
    };
    std::vector<Node> nodes;
    explicit Trie(const std::vector<Word>& words) {
      nodes.emplace_back();
      for (const auto& w : words) {
        int cur = 0;
        for (Symbol a : w.syms) {
          auto it = nodes[static_cast<std::size_t>(cur)].kids.find(a);
          if (it == nodes[static_cast<std::size_t>(cur)].kids.end()) {
            nodes.emplace_back();
            int id = static_cast<int>(nodes.size()) - 1;
            nodes[static_cast<std::size_t>(cur)].kids[a] = id;
            cur = id;
          } else {
            cur = it->second;
          }
        }
        nodes[static_cast<std::size_t>(cur)].terminal = true;
      }
    }
    const Node& root() const { return nodes[0]; }
    const Node& at(int i) const { return nodes[static_cast<std::size_t>(i)]; }
  };

  // Collect the admissible cylinders missing from the trie; the visited node
  // is never terminal.
  static void complement_walk(const Subshift& ss, const Trie& t, int node, const Word& prefix,
                              std::vector<Word>& out) {
    std::uint64_t m = ss.followers(prefix);
    while (m) {
      int a = std::countr_zero(m);
      m &= m - 1;
      auto it = t.at(node).kids.find(static_cast<Symbol>(a));
      if (it == t.at(node).kids.end()) {
        out.push_back(prefix.append(static_cast<Symbol>(a)));
      } else if (!t.at(it->second).terminal) {
        complement_walk(ss, t, it->second, prefix.append(static_cast<Symbol>(a)), out);
      }
    }
  }

  static void expand(const Subshift& ss, const Word& w, std::size_t d, std::vector<Word>& out) {
    if (w.size() == d) {
      out.push_back(w);
      return;
    }
    std::uint64_t m = ss.followers(w);
    while (m) {
      int a = std::countr_zero(m);
      m &= m - 1;
      expand(ss, w.append(static_cast<Symbol>(a)), d, out);
    }
  }

  // Absorb words that extend other words, then merge complete sibling
  // families bottom-up, then sort. The result is the unique canonical form,
  // and applying it again is the identity.
  static void canonicalize_in_place(const Subshift& ss, std::vector<Word>& ws) {
    std::sort(ws.begin(), ws.end(), shortlex_less);
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    if (ws.empty()) return;
    if (ws.front().empty()) {
      ws = {Word{}};
      return;
    }
    // absorption: shorter words win; sorted order means prefixes come first
    std::vector<Word> kept;
    for (const auto& w : ws) {
      bool covered = false;
      for (const auto& k : kept)
        if (is_prefix_of(k, w)) {
          covered = true;
          break;
        }
      if (!covered) kept.push_back(w);
    }
    // sibling merge, deepest level first; merging at depth L only creates
    // candidates at depth L-1
    std::size_t maxlen = 0;
    for (const auto& w : kept) maxlen = std::max(maxlen, w.size());
    std::vector<std::vector<Word>> by_len(maxlen + 1);
    for (auto& w : kept) {
      std::size_t n = w.size();
      by_len[n].push_back(std::move(w));
    }
    for (std::size_t len = maxlen; len >= 1; --len) {
      auto& level = by_len[len];
      std::sort(level.begin(), level.end(), shortlex_less);
      std::map<Word, std::uint64_t, decltype([](const Word& a, const Word& b) {
                return a.syms < b.syms;
              })>
          groups;
      for (const auto& w : level) groups[w.prefix(len - 1)] |= std::uint64_t{1} << w.back();
      std::vector<Word> rest;
      for (const auto& w : level) {
        const Word parent = w.prefix(len - 1);
        if (groups.at(parent) == ss.followers(parent)) continue;
        rest.push_back(w);
      }
      for (auto& [parent, mask] : groups) {
        if (mask == ss.followers(parent)) by_len[len - 1].push_back(parent);
      }
      level = std::move(rest);
      if (len - 1 == 0) break;
    }
    ws.clear();
    for (auto& level : by_len)
      for (auto& w : level) ws.push_back(std::move(w));
    std::sort(ws.begin(), ws.end(), shortlex_less);
    if (!ws.empty() && ws.front().empty()) ws = {Word{}};
  }

  SubshiftPtr ss_;
  std::vector<Word> words_;
};

} // namespace ample
