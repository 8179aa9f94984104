#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/clopen.hpp"
#include "ample/prefix_exchange.hpp"
#include "ample/subshift.hpp"

namespace ample {

struct Generator {
  std::string name;
  PrefixExchange map;
};

// A groupoid over the subshift's sequence space, given by named generating
// bisections. With the group flag every generator is a total bijection and
// the presentation is the transformation groupoid of the generated group;
// otherwise it presents a general etale groupoid (Deaconu-Renault style).
class GroupoidPresentation {
public:
  GroupoidPresentation(SubshiftPtr ss, std::vector<Generator> gens, bool group_action)
      : ss_(std::move(ss)), generators_(std::move(gens)), group_action_(group_action) {
    for (const auto& g : generators_) {
      require_same_space(ss_, g.map.space());
      if (auto bad = g.map.validate())
        throw std::invalid_argument("generator '" + g.name + "': " + *bad);
      if (group_action_) {
        if (!(g.map.source() == Clopen::whole(ss_)) || !(g.map.range() == Clopen::whole(ss_)))
          throw std::invalid_argument("generator '" + g.name +
                                      "' is not a total bijection of the space");
      }
    }
    std::map<std::string, int> seen;
    for (const auto& g : generators_)
      if (++seen[g.name] > 1) throw std::invalid_argument("duplicate generator name '" + g.name + "'");
  }

  const SubshiftPtr& space() const { return ss_; }
  const std::vector<Generator>& generators() const { return generators_; }
  bool is_group_action() const { return group_action_; }

  Clopen whole() const { return Clopen::whole(ss_); }

  // Largest depth increase any generator or inverse can apply to a cylinder.
  std::size_t max_stretch() const {
    std::size_t s = 0;
    for (const auto& g : generators_) {
      s = std::max(s, g.map.stretch());
      s = std::max(s, g.map.inverse().stretch());
    }
    return s;
  }

  std::size_t max_generator_word_length() const {
    std::size_t s = 0;
    for (const auto& g : generators_) s = std::max(s, g.map.max_word_length());
    return s;
  }

private:
  SubshiftPtr ss_;
  std::vector<Generator> generators_;
  bool group_action_;
};

// Letters of the enumeration alphabet: generator i contributes letters 2i
// (the generator) and 2i+1 (its inverse).
struct Element {
  std::string label;          // e.g. "phi*psi^-1", "id"
  std::vector<int> letters;   // composition word, leftmost applied last
  PrefixExchange map;
};

struct ElementEnumeration {
  std::vector<Element> elements;
  int bound = 0;
  // no new element appeared at this length; the generated inverse semigroup
  // is exhausted below the bound
  bool stabilized = false;
  int stabilized_at = -1;
  // some composition hit the pair-length cap, so exhaustion cannot be claimed
  bool capped = false;
};

namespace detail {

inline std::string letter_name(const GroupoidPresentation& g, int letter) {
  const auto& gen = g.generators()[static_cast<std::size_t>(letter / 2)];
  return letter % 2 ? gen.name + "^-1" : gen.name;
}

inline std::string word_label(const GroupoidPresentation& g, const std::vector<int>& letters) {
  if (letters.empty()) return "id";
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += "*";
    s += letter_name(g, letters[i]);
  }
  return s;
}

} // namespace detail

// Breadth-first closure of the generators and their inverses under
// composition, deduplicated by canonical action table. Order: word length,
// then lexicographic over letters, which makes the output deterministic.
inline ElementEnumeration enumerate_elements(const GroupoidPresentation& g, int bound,
                                             std::size_t max_pair_length = kDefaultMaxPairLength) {
  ElementEnumeration out;
  out.bound = bound;
  const int letter_count = static_cast<int>(g.generators().size()) * 2;

  std::vector<PrefixExchange> letter_maps;
  for (const auto& gen : g.generators()) {
    letter_maps.push_back(gen.map);
    letter_maps.push_back(gen.map.inverse());
  }

  std::map<std::vector<PrefixExchange::Pair>, int> seen;
  auto key_of = [](const PrefixExchange& p) { return p.pairs(); };

  Element id{"id", {}, PrefixExchange::identity(g.space())};
  seen[key_of(id.map)] = 0;
  out.elements.push_back(std::move(id));

  std::vector<std::size_t> frontier{0};
  for (int len = 1; len <= bound; ++len) {
    std::vector<std::size_t> next;
    bool added = false;
    for (std::size_t idx : frontier) {
      // copy: out.elements may reallocate while we append
      const Element base = out.elements[idx];
      for (int letter = 0; letter < letter_count; ++letter) {
        PrefixExchange composed;
        try {
          composed = compose(base.map, letter_maps[static_cast<std::size_t>(letter)],
                             max_pair_length);
        } catch (const ResourceLimitError&) {
          out.capped = true;
          continue;
        }
        auto key = key_of(composed);
        if (seen.count(key)) continue;
        std::vector<int> letters = base.letters;
        letters.push_back(letter);
        Element e{detail::word_label(g, letters), std::move(letters), std::move(composed)};
        seen[key] = static_cast<int>(out.elements.size());
        next.push_back(out.elements.size());
        out.elements.push_back(std::move(e));
        added = true;
      }
    }
    if (!added) {
      if (!out.capped) {
        out.stabilized = true;
        out.stabilized_at = len;
      }
      break;
    }
    frontier = std::move(next);
  }
  return out;
}

} // namespace ample
