#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ample {

using Symbol = std::uint8_t;

inline constexpr int kMaxAlphabet = 64;

// Word over the alphabet; the empty word denotes the whole space's cylinder.
struct Word {
  std::vector<Symbol> syms;

  Word() = default;
  explicit Word(std::vector<Symbol> s) : syms(std::move(s)) {}

  std::size_t size() const { return syms.size(); }
  bool empty() const { return syms.empty(); }
  Symbol front() const { return syms.front(); }
  Symbol back() const { return syms.back(); }

  Word prefix(std::size_t n) const {
    return Word(std::vector<Symbol>(syms.begin(), syms.begin() + n));
  }
  Word suffix_from(std::size_t n) const {
    return Word(std::vector<Symbol>(syms.begin() + n, syms.end()));
  }
  Word append(Symbol a) const {
    Word w(*this);
    w.syms.push_back(a);
    return w;
  }
  Word concat(const Word& t) const {
    Word w(*this);
    w.syms.insert(w.syms.end(), t.syms.begin(), t.syms.end());
    return w;
  }

  // raw lexicographic order; canonical containers use shortlex_less instead
  friend auto operator<=>(const Word&, const Word&) = default;
};

inline bool is_prefix_of(const Word& p, const Word& w) {
  if (p.size() > w.size()) return false;
  return std::equal(p.syms.begin(), p.syms.end(), w.syms.begin());
}

// The canonical order on words: by length, then lexicographic.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.syms < b.syms;
}

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(std::string msg, int ln = 0, int col = 0)
      : std::runtime_error(std::move(msg)), line(ln), column(col) {}
};

// One-sided subshift given by a 1-step transition relation on at most 64
// symbols. The optional initial mask restricts which symbols may start a
// sequence; it is the device that lets amplified systems reserve their
// fiber tags for position 0.
class Subshift {
public:
  static Subshift full_shift(int k, std::vector<std::string> names = {}) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(k), mask_all(k));
    return Subshift(k, std::move(rows), mask_all(k), std::move(names));
  }

  static Subshift sft(int k, std::vector<std::uint64_t> rows,
                      std::vector<std::string> names = {},
                      std::uint64_t initial = 0) {
    if (initial == 0) initial = mask_all(k);
    return Subshift(k, std::move(rows), initial, std::move(names));
  }

  int alphabet_size() const { return k_; }
  bool is_full_shift() const {
    if (initial_ != mask_all(k_)) return false;
    for (int a = 0; a < k_; ++a)
      if (rows_[static_cast<std::size_t>(a)] != mask_all(k_)) return false;
    return true;
  }

  std::uint64_t successors(Symbol a) const { return rows_[a]; }
  std::uint64_t start_mask() const { return initial_; }

  // Symbols that may extend w by one; for the empty word these are the
  // symbols allowed at position 0.
  std::uint64_t followers(const Word& w) const {
    return w.empty() ? initial_ : rows_[w.back()];
  }

  bool admissible_step(Symbol a, Symbol b) const {
    return (rows_[a] >> b) & 1u;
  }

  bool admissible(const Word& w) const { return find_violation(w).empty(); }

  // Empty string when admissible; otherwise a human-readable description of
  // the first violated constraint (the offending adjacent pair, or the
  // offending start symbol).
  std::string find_violation(const Word& w) const {
    if (w.empty()) return {};
    if (!((initial_ >> w.front()) & 1u))
      return "symbol '" + name(w.front()) + "' cannot start a word";
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!admissible_step(w.syms[i], w.syms[i + 1]))
        return "inadmissible adjacent pair '" + name(w.syms[i]) + "' -> '" +
               name(w.syms[i + 1]) + "'";
    }
    return {};
  }

  const std::string& name(Symbol a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }

  bool single_char_names() const { return single_char_; }

  int symbol_by_name(const std::string& s) const {
    for (int a = 0; a < k_; ++a)
      if (names_[static_cast<std::size_t>(a)] == s) return a;
    return -1;
  }

  std::string format_word(const Word& w) const {
    if (w.empty()) return "";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i && !single_char_) out += '.';
      out += names_[w.syms[i]];
    }
    return out;
  }

  // "" and "-" denote the empty word. Single-character alphabets parse one
  // symbol per character; otherwise symbols are '.'-separated.
  Word parse_word(const std::string& text) const {
    if (text.empty() || text == "-") return Word{};
    std::vector<Symbol> syms;
    if (single_char_ && text.find('.') == std::string::npos) {
      for (std::size_t i = 0; i < text.size(); ++i) {
        int a = symbol_by_name(std::string(1, text[i]));
        if (a < 0)
          throw ParseError("unknown symbol '" + std::string(1, text[i]) +
                               "' in word '" + text + "'",
                           0, static_cast<int>(i + 1));
        syms.push_back(static_cast<Symbol>(a));
      }
    } else {
      std::stringstream ss(text);
      std::string tok;
      while (std::getline(ss, tok, '.')) {
        if (tok.empty()) throw ParseError("empty symbol in word '" + text + "'");
        int a = symbol_by_name(tok);
        if (a < 0) throw ParseError("unknown symbol '" + tok + "' in word '" + text + "'");
        syms.push_back(static_cast<Symbol>(a));
      }
    }
    Word w(std::move(syms));
    std::string bad = find_violation(w);
    if (!bad.empty()) throw ParseError("word '" + text + "': " + bad);
    return w;
  }

  friend bool operator==(const Subshift& a, const Subshift& b) {
    return a.k_ == b.k_ && a.rows_ == b.rows_ && a.initial_ == b.initial_ &&
           a.names_ == b.names_;
  }

private:
  Subshift(int k, std::vector<std::uint64_t> rows, std::uint64_t initial,
           std::vector<std::string> names)
      : k_(k), rows_(std::move(rows)), initial_(initial), names_(std::move(names)) {
    if (k_ < 2 || k_ > kMaxAlphabet)
      throw std::invalid_argument("alphabet size must be in [2, 64]");
    if (rows_.size() != static_cast<std::size_t>(k_))
      throw std::invalid_argument("transition matrix must have one row per symbol");
    if (names_.empty()) {
      for (int a = 0; a < k_; ++a) names_.push_back(default_name(a, k_));
    }
    if (names_.size() != static_cast<std::size_t>(k_))
      throw std::invalid_argument("need one name per symbol");
    for (const auto& n : names_) {
      if (n.empty() || n == "-" || n.find('.') != std::string::npos ||
          n.find_first_of(" \t") != std::string::npos)
        throw std::invalid_argument("bad symbol name '" + n + "'");
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw std::invalid_argument("duplicate symbol name '" + names_[i] + "'");
    initial_ &= mask_all(k_);
    if (initial_ == 0) throw std::invalid_argument("no initial symbols");
    std::uint64_t all = mask_all(k_);
    std::uint64_t has_pred = 0;
    for (int a = 0; a < k_; ++a) {
      rows_[static_cast<std::size_t>(a)] &= all;
      if (rows_[static_cast<std::size_t>(a)] == 0)
        throw std::invalid_argument("symbol '" + names_[static_cast<std::size_t>(a)] +
                                    "' has no admissible successor");
      has_pred |= rows_[static_cast<std::size_t>(a)];
    }
    // Non-initial symbols must be reachable; initial-only symbols (fiber
    // tags) are exempt from the predecessor requirement.
    for (int a = 0; a < k_; ++a) {
      bool initial = (initial_ >> a) & 1u;
      bool pred = (has_pred >> a) & 1u;
      if (!initial && !pred)
        throw std::invalid_argument("symbol '" + names_[static_cast<std::size_t>(a)] +
                                    "' has no admissible predecessor");
    }
    single_char_ = true;
    for (const auto& n : names_)
      if (n.size() != 1) single_char_ = false;
  }

  static std::uint64_t mask_all(int k) {
    return k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  }

  static std::string default_name(int a, int k) {
    if (k <= 10) return std::string(1, static_cast<char>('0' + a));
    if (a < 10) return std::string(1, static_cast<char>('0' + a));
    if (a < 36) return std::string(1, static_cast<char>('a' + a - 10));
    if (a < 62) return std::string(1, static_cast<char>('A' + a - 36));
    return "s" + std::to_string(a);
  }

  int k_;
  std::vector<std::uint64_t> rows_;
  std::uint64_t initial_;
  std::vector<std::string> names_;
  bool single_char_ = true;
};

using SubshiftPtr = std::shared_ptr<const Subshift>;

inline SubshiftPtr share(Subshift s) {
  return std::make_shared<const Subshift>(std::move(s));
}

inline bool same_space(const SubshiftPtr& a, const SubshiftPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_space(const SubshiftPtr& a, const SubshiftPtr& b) {
  if (!same_space(a, b)) throw std::invalid_argument("operands live over different subshifts");
}

} // namespace ample
