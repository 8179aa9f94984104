#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "ample/presentation.hpp"
#include "ample/subshift.hpp"

namespace ample {

// Textual system description:
//
//   # comment
//   alphabet 2
//   symbols 0 1            (optional; defaults to 0..k-1)
//   initial 0 1            (optional; defaults to all symbols)
//   transitions            (optional block of k rows of 0/1; absent = full)
//   11
//   11
//   kind group             (group | etale; default etale)
//   generator phi
//   0 1
//   1 0
//
// Words are symbol-name strings ('-' for the empty word, '.'-separated when
// any symbol name has several characters).
struct SystemFile {
  int alphabet = 0;
  std::vector<std::string> symbols;
  std::vector<std::string> initial;
  std::vector<std::string> transition_rows; // k strings of k 0/1 chars
  bool group_kind = false;
  struct Gen {
    std::string name;
    std::vector<std::pair<std::string, std::string>> pairs;
  };
  std::vector<Gen> generators;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

} // namespace detail

inline SystemFile parse_system_file(const std::string& text) {
  SystemFile sf;
  std::stringstream in(text);
  std::string raw;
  int lineno = 0;
  int pending_transition_rows = 0;
  SystemFile::Gen* current_gen = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;

    if (pending_transition_rows > 0) {
      std::string row;
      for (const auto& t : toks) row += t;
      for (char c : row)
        if (c != '0' && c != '1')
          throw ParseError("transition rows must consist of 0/1", lineno, 1);
      if (static_cast<int>(row.size()) != sf.alphabet)
        throw ParseError("transition row needs one entry per symbol", lineno, 1);
      sf.transition_rows.push_back(row);
      --pending_transition_rows;
      continue;
    }

    const std::string& kw = toks[0];
    if (kw == "alphabet") {
      if (toks.size() != 2) throw ParseError("alphabet needs one integer", lineno, 1);
      sf.alphabet = std::stoi(toks[1]);
      if (sf.alphabet < 2 || sf.alphabet > kMaxAlphabet)
        throw ParseError("alphabet size must be in [2, 64]", lineno, 1);
    } else if (kw == "symbols") {
      sf.symbols.assign(toks.begin() + 1, toks.end());
    } else if (kw == "initial") {
      sf.initial.assign(toks.begin() + 1, toks.end());
    } else if (kw == "transitions") {
      if (sf.alphabet == 0) throw ParseError("alphabet must precede transitions", lineno, 1);
      if (toks.size() == 2 && toks[1] == "full") continue;
      pending_transition_rows = sf.alphabet;
    } else if (kw == "kind") {
      if (toks.size() != 2 || (toks[1] != "group" && toks[1] != "etale"))
        throw ParseError("kind must be 'group' or 'etale'", lineno, 1);
      sf.group_kind = toks[1] == "group";
    } else if (kw == "generator") {
      if (toks.size() != 2) throw ParseError("generator needs a name", lineno, 1);
      sf.generators.push_back({toks[1], {}});
      current_gen = &sf.generators.back();
    } else if (toks.size() == 2) {
      if (!current_gen)
        throw ParseError("pair line outside a generator block", lineno, 1);
      current_gen->pairs.push_back({toks[0], toks[1]});
    } else {
      throw ParseError("unrecognized line '" + raw + "'", lineno, 1);
    }
  }
  if (pending_transition_rows > 0)
    throw ParseError("transition block ended early", lineno, 1);
  if (sf.alphabet == 0) throw ParseError("missing alphabet", lineno, 1);
  return sf;
}

inline GroupoidPresentation build_presentation(const SystemFile& sf) {
  std::vector<std::string> names = sf.symbols;
  std::vector<std::uint64_t> rows;
  if (sf.transition_rows.empty()) {
    rows.assign(static_cast<std::size_t>(sf.alphabet),
                sf.alphabet == 64 ? ~std::uint64_t{0}
                                  : (std::uint64_t{1} << sf.alphabet) - 1);
  } else {
    if (static_cast<int>(sf.transition_rows.size()) != sf.alphabet)
      throw ParseError("need one transition row per symbol");
    for (const auto& r : sf.transition_rows) {
      std::uint64_t row = 0;
      for (int b = 0; b < sf.alphabet; ++b)
        if (r[static_cast<std::size_t>(b)] == '1') row |= std::uint64_t{1} << b;
      rows.push_back(row);
    }
  }
  std::uint64_t initial = 0;
  SubshiftPtr probe = share(Subshift::sft(sf.alphabet, rows, names));
  if (!sf.initial.empty()) {
    for (const auto& n : sf.initial) {
      int a = probe->symbol_by_name(n);
      if (a < 0) throw ParseError("unknown initial symbol '" + n + "'");
      initial |= std::uint64_t{1} << a;
    }
  }
  SubshiftPtr ss = share(Subshift::sft(sf.alphabet, rows, probe->names(), initial));
  std::vector<Generator> gens;
  for (const auto& g : sf.generators) {
    std::vector<PrefixExchange::Pair> ps;
    for (const auto& [u, v] : g.pairs) ps.push_back({ss->parse_word(u), ss->parse_word(v)});
    gens.push_back({g.name, PrefixExchange(ss, std::move(ps))});
  }
  return GroupoidPresentation(ss, std::move(gens), sf.group_kind);
}

inline GroupoidPresentation parse_presentation(const std::string& text) {
  return build_presentation(parse_system_file(text));
}

inline std::string dump_system(const GroupoidPresentation& g, const std::string& comment = "") {
  const Subshift& ss = *g.space();
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "alphabet " + std::to_string(ss.alphabet_size()) + "\n";
  out += "symbols";
  for (int a = 0; a < ss.alphabet_size(); ++a) out += " " + ss.name(static_cast<Symbol>(a));
  out += "\n";
  std::uint64_t all = ss.alphabet_size() == 64
                          ? ~std::uint64_t{0}
                          : (std::uint64_t{1} << ss.alphabet_size()) - 1;
  if (ss.start_mask() != all) {
    out += "initial";
    for (int a = 0; a < ss.alphabet_size(); ++a)
      if (ss.start_mask() >> a & 1u) out += " " + ss.name(static_cast<Symbol>(a));
    out += "\n";
  }
  if (!ss.is_full_shift()) {
    out += "transitions\n";
    for (int a = 0; a < ss.alphabet_size(); ++a) {
      for (int b = 0; b < ss.alphabet_size(); ++b)
        out += (ss.successors(static_cast<Symbol>(a)) >> b & 1u) ? '1' : '0';
      out += "\n";
    }
  }
  out += std::string("kind ") + (g.is_group_action() ? "group" : "etale") + "\n";
  for (const auto& gen : g.generators()) {
    out += "generator " + gen.name + "\n";
    for (const auto& [u, v] : gen.map.pairs()) {
      std::string fu = ss.format_word(u);
      std::string fv = ss.format_word(v);
      out += (fu.empty() ? "-" : fu) + " " + (fv.empty() ? "-" : fv) + "\n";
    }
  }
  return out;
}

} // namespace ample
