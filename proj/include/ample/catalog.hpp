#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ample/presentation.hpp"

namespace ample {
namespace catalog {

namespace detail {

inline PrefixExchange make_pe(const SubshiftPtr& ss,
                              std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<PrefixExchange::Pair> ps;
  for (const auto& [u, v] : pairs) ps.push_back({ss->parse_word(u), ss->parse_word(v)});
  return PrefixExchange(ss, std::move(ps));
}

inline void require_relation(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("catalog construction: relation " + what + " failed");
}

} // namespace detail

// The order-2 / order-3 homeomorphism pair on {0,1}^N whose induced action
// models the Cuntz algebra O_2. Both relations are checked mechanically.
inline GroupoidPresentation o2_action() {
  auto ss = share(Subshift::full_shift(2));
  PrefixExchange phi = detail::make_pe(ss, {{"0", "1"}, {"1", "0"}});
  PrefixExchange psi = detail::make_pe(ss, {{"0", "11"}, {"11", "10"}, {"10", "0"}});
  detail::require_relation(compose(phi, phi) == PrefixExchange::identity(ss), "phi^2 = id");
  detail::require_relation(compose(psi, compose(psi, psi)) == PrefixExchange::identity(ss),
                           "psi^3 = id");
  return GroupoidPresentation(ss, {{"phi", phi}, {"psi", psi}}, true);
}

// Constructive transport of N_0 onto N_z: reduce z to "0" symbol by symbol
// (11... via psi^-1, 10... via psi, 0... via phi first), then invert the
// recorded reduction. The generator word has length at most 2|z|+2.
struct SolverResult {
  PrefixExchange map;
  std::string word; // e.g. "phi*psi^-1*phi*psi^-1", leftmost applied last
};

inline SolverResult o2_solver(const Word& z) {
  if (z.empty()) throw std::invalid_argument("o2_solver needs a non-empty word");
  auto ss = share(Subshift::full_shift(2));
  PrefixExchange phi = detail::make_pe(ss, {{"0", "1"}, {"1", "0"}});
  PrefixExchange psi = detail::make_pe(ss, {{"0", "11"}, {"11", "10"}, {"10", "0"}});
  PrefixExchange psi_inv = psi.inverse();

  // reduction steps applied to the word, first applied step first
  std::vector<int> steps; // 0 = phi, 1 = psi, 2 = psi^-1
  Word w = z;
  auto guard = 4 * z.size() + 8;
  while (!(w.size() == 1 && w.syms[0] == 0)) {
    if (guard-- == 0) throw std::logic_error("o2_solver failed to terminate");
    if (w.size() == 1) { // w == "1"
      steps.push_back(0);
      w.syms[0] = 0;
      continue;
    }
    if (w.syms[0] == 1 && w.syms[1] == 1) {
      steps.push_back(2); // psi^-1 (11 x -> 0 x)
      Word next;
      next.syms.push_back(0);
      next.syms.insert(next.syms.end(), w.syms.begin() + 2, w.syms.end());
      w = next;
    } else if (w.syms[0] == 1 && w.syms[1] == 0) {
      steps.push_back(1); // psi (10 x -> 0 x)
      Word next;
      next.syms.push_back(0);
      next.syms.insert(next.syms.end(), w.syms.begin() + 2, w.syms.end());
      w = next;
    } else {
      steps.push_back(0); // phi (0 x -> 1 x)
      w.syms[0] = 1;
    }
  }

  // invert: g = s_1^-1 * s_2^-1 * ... * s_m^-1 maps N_0 onto N_z
  const PrefixExchange* maps[3] = {&phi, &psi, &psi_inv};
  const char* inv_names[3] = {"phi", "psi^-1", "psi"};
  PrefixExchange g = PrefixExchange::identity(ss);
  std::string word;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    int inv = steps[i] == 0 ? 0 : (steps[i] == 1 ? 2 : 1);
    g = compose(g, *maps[static_cast<std::size_t>(inv)]);
    if (i) word += "*";
    word += inv_names[static_cast<std::size_t>(steps[i])];
  }
  if (steps.empty()) word = "id";
  return {std::move(g), std::move(word)};
}

// Boundary action of the free group F_n: alphabet of 2n letters with
// mutually-inverse adjacent pairs forbidden; the generator for a acts by
// left multiplication, eating a^-1 prefixes and prepending a elsewhere.
inline GroupoidPresentation free_boundary(int n) {
  if (n < 2 || 2 * n > kMaxAlphabet)
    throw std::invalid_argument("free_boundary needs 2 <= n <= 32");
  int k = 2 * n;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    char base = static_cast<char>('a' + i);
    names.push_back(std::string(1, base));
    names.push_back(std::string(1, static_cast<char>(base - 'a' + 'A')));
  }
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(k));
  for (int x = 0; x < k; ++x) {
    std::uint64_t row = 0;
    for (int y = 0; y < k; ++y)
      if (y != (x ^ 1)) row |= std::uint64_t{1} << y;
    rows[static_cast<std::size_t>(x)] = row;
  }
  auto ss = share(Subshift::sft(k, rows, names));
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) {
    Symbol a = static_cast<Symbol>(2 * i);
    Symbol a_inv = static_cast<Symbol>(2 * i + 1);
    std::vector<PrefixExchange::Pair> ps;
    // a^-1 alpha -> alpha for admissible alpha; beta -> a beta for beta != a^-1
    for (int y = 0; y < k; ++y) {
      if (y == a) continue; // a^-1 a is inadmissible
      ps.push_back({Word{{a_inv, static_cast<Symbol>(y)}}, Word{{static_cast<Symbol>(y)}}});
    }
    for (int y = 0; y < k; ++y) {
      if (y == a_inv) continue;
      ps.push_back({Word{{static_cast<Symbol>(y)}}, Word{{a, static_cast<Symbol>(y)}}});
    }
    PrefixExchange gen(ss, std::move(ps));
    detail::require_relation(compose(gen, gen.inverse()) == PrefixExchange::identity(ss),
                             names[static_cast<std::size_t>(2 * i)] + " * inverse = id");
    gens.push_back({names[static_cast<std::size_t>(2 * i)], std::move(gen)});
  }
  return GroupoidPresentation(ss, std::move(gens), true);
}

// Deaconu-Renault groupoid of the full k-shift: one prepend bisection per
// symbol.
inline GroupoidPresentation full_shift_dr(int k) {
  auto ss = share(Subshift::full_shift(k));
  std::vector<Generator> gens;
  for (int a = 0; a < k; ++a) {
    std::vector<PrefixExchange::Pair> ps{{Word{}, Word{{static_cast<Symbol>(a)}}}};
    gens.push_back({"s" + ss->name(static_cast<Symbol>(a)),
                    PrefixExchange(ss, std::move(ps))});
  }
  return GroupoidPresentation(ss, std::move(gens), false);
}

// Deaconu-Renault groupoid of a 1-step SFT: the prepend-a bisection is
// restricted to the follower clopen of a so that it stays a bisection.
inline GroupoidPresentation sft_dr(int k, const std::vector<std::uint64_t>& rows,
                                   std::vector<std::string> names = {}) {
  auto ss = share(Subshift::sft(k, rows, std::move(names)));
  std::vector<Generator> gens;
  for (int a = 0; a < k; ++a) {
    std::vector<PrefixExchange::Pair> ps;
    std::uint64_t m = ss->successors(static_cast<Symbol>(a));
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      ps.push_back({Word{{static_cast<Symbol>(b)}},
                    Word{{static_cast<Symbol>(a), static_cast<Symbol>(b)}}});
    }
    gens.push_back({"s" + ss->name(static_cast<Symbol>(a)),
                    PrefixExchange(ss, std::move(ps))});
  }
  return GroupoidPresentation(ss, std::move(gens), false);
}

// Golden mean shift: the word 11 is forbidden.
inline GroupoidPresentation golden_mean_dr() { return sft_dr(2, {0b11, 0b01}); }

// Full k-shift with no generators: every measure is invariant and every
// point is a global fixed unit.
inline GroupoidPresentation trivial_action(int k) {
  auto ss = share(Subshift::full_shift(k));
  return GroupoidPresentation(ss, {}, true);
}

// Amplification with m fibers: fresh fiber tags are valid only as the first
// symbol (no transitions lead into them) and every generator acts
// identically on each fiber. The unit space becomes m disjoint tagged
// copies of the original space.
inline GroupoidPresentation amplify(const GroupoidPresentation& g, int m) {
  if (m < 1) throw std::invalid_argument("amplify needs m >= 1");
  const Subshift& base = *g.space();
  int k = base.alphabet_size();
  if (k + m > kMaxAlphabet)
    throw std::invalid_argument("amplified alphabet exceeds 64 symbols");
  std::vector<std::string> names = base.names();
  for (int f = 0; f < m; ++f) names.push_back("f" + std::to_string(f + 1));
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(k + m));
  for (int a = 0; a < k; ++a) rows[static_cast<std::size_t>(a)] = base.successors(static_cast<Symbol>(a));
  // a fiber tag may be followed by any base start symbol; nothing may follow
  // into a fiber tag
  for (int f = 0; f < m; ++f) rows[static_cast<std::size_t>(k + f)] = base.start_mask();
  std::uint64_t initial = 0;
  for (int f = 0; f < m; ++f) initial |= std::uint64_t{1} << (k + f);
  auto ss = share(Subshift::sft(k + m, rows, names, initial));

  std::vector<Generator> gens;
  for (const auto& gen : g.generators()) {
    std::vector<PrefixExchange::Pair> ps;
    for (int f = 0; f < m; ++f) {
      Symbol tag = static_cast<Symbol>(k + f);
      for (const auto& [u, v] : gen.map.pairs()) {
        Word nu, nv;
        nu.syms.push_back(tag);
        nu.syms.insert(nu.syms.end(), u.syms.begin(), u.syms.end());
        nv.syms.push_back(tag);
        nv.syms.insert(nv.syms.end(), v.syms.begin(), v.syms.end());
        ps.push_back({std::move(nu), std::move(nv)});
      }
    }
    gens.push_back({gen.name, PrefixExchange(ss, std::move(ps))});
  }
  return GroupoidPresentation(ss, std::move(gens), false);
}

struct SystemDescriptor {
  std::string name;
  std::string note; // provenance of the construction
  std::function<GroupoidPresentation()> build;
};

inline const std::vector<SystemDescriptor>& builtin_systems() {
  static const std::vector<SystemDescriptor> systems = {
      {"o2", "Z2*Z3 action on {0,1}^N modelling the Cuntz algebra O_2",
       [] { return o2_action(); }},
      {"trivial2", "trivial group acting on the full 2-shift", [] { return trivial_action(2); }},
      {"trivial3", "trivial group acting on the full 3-shift", [] { return trivial_action(3); }},
      {"fulldr2", "Deaconu-Renault groupoid of the full 2-shift", [] { return full_shift_dr(2); }},
      {"fulldr3", "Deaconu-Renault groupoid of the full 3-shift", [] { return full_shift_dr(3); }},
      {"golden", "Deaconu-Renault groupoid of the golden mean shift",
       [] { return golden_mean_dr(); }},
      {"free2", "boundary action of the free group F_2", [] { return free_boundary(2); }},
      {"free3", "boundary action of the free group F_3", [] { return free_boundary(3); }},
      {"o2amp2", "amplification of the O_2 model with two fibers",
       [] { return amplify(o2_action(), 2); }},
  };
  return systems;
}

inline const SystemDescriptor* find_system(const std::string& name) {
  for (const auto& s : builtin_systems())
    if (s.name == name) return &s;
  return nullptr;
}

} // namespace catalog
} // namespace ample
