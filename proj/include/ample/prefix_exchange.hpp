#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ample/clopen.hpp"
#include "ample/subshift.hpp"

namespace ample {

inline constexpr std::size_t kDefaultMaxPairLength = 32;

// Composition depth is unbounded in principle; the cap turns runaway growth
// into a reported error instead of memory exhaustion.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Compact open bisection presented as a finite exchange of prefixes:
// the partial homeomorphism  u_i y  |->  v_i y.  Sources and targets each
// form a prefix code, and matched words have equal follower sets so the
// exchange is defined on whole cylinders.
class PrefixExchange {
public:
  using Pair = std::pair<Word, Word>;

  PrefixExchange() = default;
  PrefixExchange(SubshiftPtr ss, std::vector<Pair> pairs)
      : ss_(std::move(ss)), pairs_(std::move(pairs)) {
    merge_siblings(*ss_, pairs_);
  }

  static PrefixExchange empty(SubshiftPtr ss) { return PrefixExchange(std::move(ss), {}); }

  static PrefixExchange identity(SubshiftPtr ss) {
    return PrefixExchange(std::move(ss), {{Word{}, Word{}}});
  }

  static PrefixExchange identity_on(const Clopen& c) {
    std::vector<Pair> ps;
    for (const auto& w : c.words()) ps.push_back({w, w});
    return PrefixExchange(c.space(), std::move(ps));
  }

  // Keeps the pair table exactly as given (sorted, but with no sibling
  // merging); refinement needs tables finer than canonical.
  static PrefixExchange from_pairs_unmerged(SubshiftPtr ss, std::vector<Pair> pairs) {
    PrefixExchange p;
    p.ss_ = std::move(ss);
    p.pairs_ = std::move(pairs);
    std::sort(p.pairs_.begin(), p.pairs_.end(), [](const Pair& a, const Pair& b) {
      if (shortlex_less(a.first, b.first)) return true;
      if (shortlex_less(b.first, a.first)) return false;
      return shortlex_less(a.second, b.second);
    });
    return p;
  }

  const SubshiftPtr& space() const { return ss_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  bool is_empty_map() const { return pairs_.empty(); }

  std::size_t max_word_length() const {
    std::size_t n = 0;
    for (const auto& [u, v] : pairs_) n = std::max({n, u.size(), v.size()});
    return n;
  }

  // Largest |v|-|u| over the pairs, clamped at zero: how much deeper the
  // image of a cylinder can sit than the cylinder itself.
  std::size_t stretch() const {
    std::size_t s = 0;
    for (const auto& [u, v] : pairs_)
      if (v.size() > u.size()) s = std::max(s, v.size() - u.size());
    return s;
  }

  friend bool operator==(const PrefixExchange& a, const PrefixExchange& b) {
    return same_space(a.ss_, b.ss_) && a.pairs_ == b.pairs_;
  }

  // Strict weak order on canonical pair tables; used for deduplication.
  friend bool table_less(const PrefixExchange& a, const PrefixExchange& b) {
    return std::lexicographical_compare(
        a.pairs_.begin(), a.pairs_.end(), b.pairs_.begin(), b.pairs_.end(),
        [](const Pair& x, const Pair& y) {
          if (shortlex_less(x.first, y.first)) return true;
          if (shortlex_less(y.first, x.first)) return false;
          return shortlex_less(x.second, y.second);
        });
  }

  // First violated invariant as a diagnostic, or nullopt when the exchange
  // is a valid bisection table.
  std::optional<std::string> validate() const {
    for (const auto& [u, v] : pairs_) {
      std::string bad = ss_->find_violation(u);
      if (!bad.empty()) return "source word: " + bad;
      bad = ss_->find_violation(v);
      if (!bad.empty()) return "target word: " + bad;
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      for (std::size_t j = 0; j < pairs_.size(); ++j) {
        if (i == j) continue;
        if (is_prefix_of(pairs_[i].first, pairs_[j].first))
          return std::string("source not a prefix code: '") +
                 ss_->format_word(pairs_[i].first) + "' is a prefix of '" +
                 ss_->format_word(pairs_[j].first) + "'";
      }
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      for (std::size_t j = 0; j < pairs_.size(); ++j) {
        if (i == j) continue;
        if (is_prefix_of(pairs_[i].second, pairs_[j].second))
          return std::string("target not a prefix code: '") +
                 ss_->format_word(pairs_[i].second) + "' is a prefix of '" +
                 ss_->format_word(pairs_[j].second) + "'";
      }
    for (const auto& [u, v] : pairs_) {
      if (ss_->followers(u) != ss_->followers(v))
        return "follower mismatch between '" + ss_->format_word(u) + "' and '" +
               ss_->format_word(v) + "'";
    }
    return std::nullopt;
  }

  Clopen source() const {
    std::vector<Word> ws;
    for (const auto& [u, v] : pairs_) ws.push_back(u);
    return Clopen::canonical(ss_, std::move(ws));
  }

  Clopen range() const {
    std::vector<Word> ws;
    for (const auto& [u, v] : pairs_) ws.push_back(v);
    return Clopen::canonical(ss_, std::move(ws));
  }

  // Image of c under the partial map; points outside the source drop out.
  Clopen apply(const Clopen& c) const {
    require_same_space(ss_, c.space());
    std::vector<Word> out;
    for (const auto& [u, v] : pairs_) {
      for (const auto& w : c.words()) {
        if (is_prefix_of(u, w)) {
          out.push_back(v.concat(w.suffix_from(u.size())));
        } else if (is_prefix_of(w, u)) {
          out.push_back(v);
        }
      }
    }
    return Clopen::canonical(ss_, std::move(out));
  }

  // Image of the single cylinder N_w when it lies inside one pair's source;
  // nullopt when N_w is not contained in the source code.
  std::optional<Word> apply_cylinder(const Word& w) const {
    for (const auto& [u, v] : pairs_)
      if (is_prefix_of(u, w)) return v.concat(w.suffix_from(u.size()));
    return std::nullopt;
  }

  PrefixExchange inverse() const {
    std::vector<Pair> ps;
    ps.reserve(pairs_.size());
    for (const auto& [u, v] : pairs_) ps.push_back({v, u});
    return PrefixExchange(ss_, std::move(ps));
  }

  // Restriction of the map to c (intersected with the source).
  PrefixExchange restrict_to(const Clopen& c) const {
    require_same_space(ss_, c.space());
    std::vector<Pair> ps;
    for (const auto& [u, v] : pairs_) {
      for (const auto& w : c.words()) {
        if (is_prefix_of(w, u)) {
          ps.push_back({u, v});
        } else if (is_prefix_of(u, w)) {
          ps.push_back({w, v.concat(w.suffix_from(u.size()))});
        }
      }
    }
    return PrefixExchange(ss_, std::move(ps));
  }

  friend PrefixExchange compose(const PrefixExchange& outer, const PrefixExchange& inner,
                                std::size_t max_pair_length = kDefaultMaxPairLength) {
    require_same_space(outer.ss_, inner.ss_);
    std::vector<Pair> ps;
    for (const auto& [u, v] : inner.pairs_) {
      for (const auto& [x, y] : outer.pairs_) {
        if (is_prefix_of(x, v)) {
          // inner lands wholly inside the outer source piece
          Word z = v.suffix_from(x.size());
          ps.push_back({u, y.concat(z)});
        } else if (is_prefix_of(v, x)) {
          Word z = x.suffix_from(v.size());
          ps.push_back({u.concat(z), y});
        }
      }
    }
    for (const auto& [u, v] : ps) {
      if (u.size() > max_pair_length || v.size() > max_pair_length)
        throw ResourceLimitError("composition exceeds max pair word length " +
                                 std::to_string(max_pair_length));
    }
    return PrefixExchange(outer.ss_, std::move(ps));
  }

  std::string format() const {
    std::string s = "{";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (i) s += ",";
      std::string u = ss_->format_word(pairs_[i].first);
      std::string v = ss_->format_word(pairs_[i].second);
      s += "(" + (u.empty() ? "-" : u) + "->" + (v.empty() ? "-" : v) + ")";
    }
    return s + "}";
  }

private:
  // Canonical form: whenever every admissible one-symbol extension
  // (u·α, v·α) of a pair is present, it collapses to (u, v); pairs sorted by
  // source word. Sorting and merging bottom-up mirrors Clopen.
  static void merge_siblings(const Subshift& ss, std::vector<Pair>& ps) {
    auto pair_less = [](const Pair& a, const Pair& b) {
      if (shortlex_less(a.first, b.first)) return true;
      if (shortlex_less(b.first, a.first)) return false;
      return shortlex_less(a.second, b.second);
    };
    std::sort(ps.begin(), ps.end(), pair_less);
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    bool changed = true;
    while (changed) {
      changed = false;
      // group by (parent source, parent target); both words must shrink by
      // the same trailing symbol
      std::map<std::vector<Symbol>, std::uint64_t> groups;
      for (const auto& [u, v] : ps) {
        if (u.empty() || v.empty() || u.back() != v.back()) continue;
        std::vector<Symbol> key;
        key.push_back(static_cast<Symbol>(u.size() - 1));
        key.insert(key.end(), u.syms.begin(), u.syms.end() - 1);
        key.insert(key.end(), v.syms.begin(), v.syms.end() - 1);
        groups[key] |= std::uint64_t{1} << u.back();
      }
      std::vector<Pair> next;
      std::vector<Pair> parents;
      for (const auto& [u, v] : ps) {
        bool merged = false;
        if (!u.empty() && !v.empty() && u.back() == v.back()) {
          std::vector<Symbol> key;
          key.push_back(static_cast<Symbol>(u.size() - 1));
          key.insert(key.end(), u.syms.begin(), u.syms.end() - 1);
          key.insert(key.end(), v.syms.begin(), v.syms.end() - 1);
          Word pu = u.prefix(u.size() - 1);
          Word pv = v.prefix(v.size() - 1);
          if (ss.followers(pu) == ss.followers(pv) && groups.at(key) == ss.followers(pu)) {
            merged = true;
            Pair parent{pu, pv};
            if (std::find(parents.begin(), parents.end(), parent) == parents.end())
              parents.push_back(parent);
          }
        }
        if (!merged) next.push_back({u, v});
      }
      if (!parents.empty()) {
        changed = true;
        next.insert(next.end(), parents.begin(), parents.end());
        std::sort(next.begin(), next.end(), pair_less);
      }
      ps = std::move(next);
    }
    std::sort(ps.begin(), ps.end(), pair_less);
  }

  SubshiftPtr ss_;
  std::vector<Pair> pairs_;
};

} // namespace ample
