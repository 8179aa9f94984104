#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ample/clopen.hpp"
#include "ample/subshift.hpp"
#include "oracle.hpp"

using namespace ample;

namespace {

SubshiftPtr full2() {
  static SubshiftPtr ss = share(Subshift::full_shift(2));
  return ss;
}

// boundary of the free group F2: alphabet {a,A,b,B}, no x followed by its
// inverse
SubshiftPtr f2_boundary() {
  static SubshiftPtr ss = [] {
    std::vector<std::uint64_t> rows(4);
    auto inv = [](int x) { return x ^ 1; };
    for (int x = 0; x < 4; ++x) {
      std::uint64_t row = 0;
      for (int y = 0; y < 4; ++y)
        if (y != inv(x)) row |= std::uint64_t{1} << y;
      rows[static_cast<std::size_t>(x)] = row;
    }
    return share(Subshift::sft(4, rows, {"a", "A", "b", "B"}));
  }();
  return ss;
}

Clopen cl(const SubshiftPtr& ss, std::initializer_list<const char*> ws) {
  std::vector<Word> words;
  for (const char* w : ws) words.push_back(ss->parse_word(w));
  return Clopen::canonical(ss, std::move(words));
}

Clopen random_clopen(const SubshiftPtr& ss, std::mt19937& rng, int max_depth) {
  std::uniform_int_distribution<int> nw(0, 5);
  std::uniform_int_distribution<int> len(0, max_depth);
  std::vector<Word> words;
  int n = nw(rng);
  for (int i = 0; i < n; ++i) {
    Word w;
    int L = len(rng);
    for (int j = 0; j < L; ++j) {
      std::uint64_t m = ss->followers(w);
      std::vector<int> opts;
      for (int a = 0; a < ss->alphabet_size(); ++a)
        if (m >> a & 1u) opts.push_back(a);
      w = w.append(static_cast<Symbol>(opts[static_cast<std::size_t>(
          std::uniform_int_distribution<int>(0, static_cast<int>(opts.size()) - 1)(rng))]));
    }
    words.push_back(w);
  }
  return Clopen::canonical(ss, std::move(words));
}

} // namespace

TEST_CASE("canonicalize merges complete sibling families") {
  auto ss = full2();
  CHECK(cl(ss, {"00", "01"}) == cl(ss, {"0"}));
  CHECK(cl(ss, {"0", "1"}) == Clopen::whole(ss));
  CHECK(cl(ss, {"0", "10", "11"}) == Clopen::whole(ss));
  CHECK(cl(ss, {"0", "00"}) == cl(ss, {"0"}));
}

TEST_CASE("canonicalize on the F2 boundary respects admissibility") {
  auto ss = f2_boundary();
  // the three admissible children of "a" are aa, ab, aB
  CHECK(cl(ss, {"aa", "ab", "aB"}) == cl(ss, {"a"}));
  CHECK_THROWS_WITH(cl(ss, {"aA"}), Catch::Matchers::ContainsSubstring("inadmissible"));
}

TEST_CASE("inadmissible words name the offending pair") {
  auto ss = f2_boundary();
  CHECK_THROWS_WITH(Clopen::canonical(ss, {Word{{2, 3}}}),
                    Catch::Matchers::ContainsSubstring("'b' -> 'B'"));
}

TEST_CASE("boolean operations on the full shift") {
  auto ss = full2();
  CHECK(complement(cl(ss, {"0"})) == cl(ss, {"1"}));
  CHECK(complement(Clopen::whole(ss)).is_empty());
  CHECK(complement(Clopen::empty(ss)) == Clopen::whole(ss));
  CHECK(union_of(cl(ss, {"00"}), cl(ss, {"01"})) == cl(ss, {"0"}));
  CHECK(intersect(cl(ss, {"0"}), cl(ss, {"01"})) == cl(ss, {"01"}));
  CHECK(difference(cl(ss, {"0"}), cl(ss, {"01"})) == cl(ss, {"00"}));
}

TEST_CASE("complement on the F2 boundary") {
  auto ss = f2_boundary();
  CHECK(complement(cl(ss, {"a"})) == cl(ss, {"A", "b", "B"}));
}

TEST_CASE("relate") {
  auto ss = full2();
  CHECK(relate(cl(ss, {"0"}), Clopen::whole(ss)) == SetRelation::Subset);
  CHECK(relate(cl(ss, {"00"}), cl(ss, {"01"})) == SetRelation::Disjoint);
  CHECK(relate(cl(ss, {"0", "10"}), cl(ss, {"1"})) == SetRelation::Overlapping);
  CHECK(relate(cl(ss, {"0"}), cl(ss, {"0"})) == SetRelation::Equal);
  CHECK(relate(Clopen::whole(ss), cl(ss, {"1"})) == SetRelation::Superset);
}

TEST_CASE("refine") {
  auto ss = full2();
  auto words = cl(ss, {"0"}).refine(2);
  REQUIRE(words.size() == 2);
  CHECK(ss->format_word(words[0]) == "00");
  CHECK(ss->format_word(words[1]) == "01");

  auto ssf = f2_boundary();
  CHECK(Clopen::whole(ssf).refine(1).size() == 4);
  auto deeper = cl(ssf, {"a"}).refine(2);
  REQUIRE(deeper.size() == 3);
  CHECK(ssf->format_word(deeper[0]) == "aa");
  CHECK(ssf->format_word(deeper[1]) == "ab");
  CHECK(ssf->format_word(deeper[2]) == "aB");

  CHECK_THROWS(cl(ss, {"00"}).refine(1));
}

TEST_CASE("refine then canonicalize recovers the set") {
  std::mt19937 rng(7);
  auto ss = full2();
  auto ssf = f2_boundary();
  for (int i = 0; i < 80; ++i) {
    const auto& space = (i % 2) ? ssf : ss;
    Clopen c = random_clopen(space, rng, 4);
    for (std::size_t d = c.max_depth(); d <= 8; ++d) {
      CHECK(Clopen::canonical(space, c.refine(d)) == c);
    }
  }
}

TEST_CASE("canonicalize is idempotent on random inputs") {
  std::mt19937 rng(11);
  auto ss = full2();
  for (int i = 0; i < 300; ++i) {
    Clopen c = random_clopen(ss, rng, 6);
    CHECK(Clopen::canonical(ss, c.words()) == c);
  }
}

TEST_CASE("boolean algebra laws on canonical forms") {
  std::mt19937 rng(13);
  auto ss = full2();
  auto ssf = f2_boundary();
  for (int i = 0; i < 150; ++i) {
    const auto& space = (i % 2) ? ssf : ss;
    Clopen a = random_clopen(space, rng, 5);
    Clopen b = random_clopen(space, rng, 5);
    Clopen c = random_clopen(space, rng, 5);
    CHECK(complement(complement(a)) == a);
    CHECK(complement(union_of(a, b)) == intersect(complement(a), complement(b)));
    CHECK(complement(intersect(a, b)) == union_of(complement(a), complement(b)));
    CHECK(union_of(a, intersect(a, b)) == a);
    CHECK(intersect(a, union_of(a, b)) == a);
    CHECK(union_of(a, union_of(b, c)) == union_of(union_of(a, b), c));
  }
}

TEST_CASE("all operations agree with the depth-5 bitset oracle") {
  std::mt19937 rng(17);
  auto ss = full2();
  for (int i = 0; i < 400; ++i) {
    Clopen a = random_clopen(ss, rng, 5);
    Clopen b = random_clopen(ss, rng, 5);
    std::uint32_t ma = oracle::mask_of(a);
    std::uint32_t mb = oracle::mask_of(b);
    CHECK(union_of(a, b) == oracle::clopen_of(ss, ma | mb));
    CHECK(intersect(a, b) == oracle::clopen_of(ss, ma & mb));
    CHECK(complement(a) == oracle::clopen_of(ss, ~ma));
    CHECK(difference(a, b) == oracle::clopen_of(ss, ma & ~mb));
    CHECK(subset_of(a, b) == ((ma & ~mb) == 0));
    CHECK(disjoint(a, b) == ((ma & mb) == 0));
    SetRelation r = relate(a, b);
    SetRelation expect = ma == mb                ? SetRelation::Equal
                         : (ma & ~mb) == 0       ? SetRelation::Subset
                         : (mb & ~ma) == 0       ? SetRelation::Superset
                         : (ma & mb) == 0        ? SetRelation::Disjoint
                                                 : SetRelation::Overlapping;
    CHECK(r == expect);
    // round-trip through the oracle representation is exact
    CHECK(oracle::clopen_of(ss, ma) == a);
  }
}
