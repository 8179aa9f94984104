#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ample/search.hpp"

using namespace ample;

namespace {

SubshiftPtr full2() {
  static SubshiftPtr ss = share(Subshift::full_shift(2));
  return ss;
}

PrefixExchange pe(const SubshiftPtr& ss,
                  std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<PrefixExchange::Pair> ps;
  for (const auto& [u, v] : pairs) ps.push_back({ss->parse_word(u), ss->parse_word(v)});
  return PrefixExchange(ss, std::move(ps));
}

Clopen cl(const SubshiftPtr& ss, std::initializer_list<const char*> ws) {
  std::vector<Word> words;
  for (const char* w : ws) words.push_back(ss->parse_word(w));
  return Clopen::canonical(ss, std::move(words));
}

GroupoidPresentation o2() {
  auto ss = full2();
  return GroupoidPresentation(
      ss,
      {{"phi", pe(ss, {{"0", "1"}, {"1", "0"}})},
       {"psi", pe(ss, {{"0", "11"}, {"11", "10"}, {"10", "0"}})}},
      true);
}

GroupoidPresentation trivial2() { return GroupoidPresentation(full2(), {}, true); }

GroupoidPresentation full_dr() {
  auto ss = full2();
  return GroupoidPresentation(ss, {{"s0", pe(ss, {{"", "0"}})}, {"s1", pe(ss, {{"", "1"}})}},
                              false);
}

GroupoidPresentation golden_dr() {
  // golden mean shift: 11 forbidden
  static SubshiftPtr ss =
      share(Subshift::sft(2, {0b11, 0b01}, {"0", "1"}));
  return GroupoidPresentation(
      ss,
      {{"s0", pe(ss, {{"0", "00"}, {"1", "01"}})}, {"s1", pe(ss, {{"0", "10"}})}}, false);
}

} // namespace

TEST_CASE("subset comparisons verify with a single identity piece") {
  auto ss = full2();
  for (auto* g : {new GroupoidPresentation(o2()), new GroupoidPresentation(trivial2())}) {
    auto out = search_compare(*g, cl(ss, {"01"}), cl(ss, {"0"}), {});
    REQUIRE(out.kind == OutcomeKind::Verified);
    REQUIRE(out.certificate->pieces.size() == 1);
    CHECK(out.certificate->pieces[0].label == "id");
    CHECK(verify_transporter(*out.certificate));
    delete g;
  }
}

TEST_CASE("o2: the whole space compares below a depth-2 cylinder") {
  SearchConfig cfg;
  cfg.bound = 6;
  auto g = o2();
  auto out = search_compare(g, Clopen::whole(full2()), cl(full2(), {"00"}), cfg);
  REQUIRE(out.kind == OutcomeKind::Verified);
  CHECK(verify_transporter(*out.certificate));
  CHECK(subset_of(out.certificate->target, cl(full2(), {"00"})));
}

TEST_CASE("trivial action: strictly larger sets are measure-refuted") {
  auto g = trivial2();
  auto out = search_compare(g, Clopen::whole(full2()), cl(full2(), {"0"}), {});
  REQUIRE(out.kind == OutcomeKind::RefutedMeasure);
  REQUIRE(out.measure);
  CHECK(out.measure->lhs > out.measure->rhs);
  CHECK(check_invariant(g, out.measure->witness));
}

TEST_CASE("empty subject verifies vacuously") {
  auto g = trivial2();
  auto out = search_compare(g, Clopen::empty(full2()), cl(full2(), {"0"}), {});
  CHECK(out.kind == OutcomeKind::Verified);
  CHECK(out.certificate->pieces.empty());
}

TEST_CASE("tuple comparison examples") {
  auto ss = full2();
  SearchConfig cfg;
  cfg.bound = 6;

  // halves into the whole: two identity entries
  auto t1 = search_compare_tuple(trivial2(), {cl(ss, {"0"}), cl(ss, {"1"})},
                                 {Clopen::whole(ss)}, cfg);
  REQUIRE(t1.kind == OutcomeKind::Verified);
  CHECK(verify_tuple(*t1.certificate));
  CHECK(t1.certificate->entries.size() == 2);

  // paradoxical comparison of the whole space on the o2 model
  auto g = o2();
  auto t2 = search_compare_tuple(g, {Clopen::whole(ss), Clopen::whole(ss)},
                                 {Clopen::whole(ss)}, cfg);
  REQUIRE(t2.kind == OutcomeKind::Verified);
  CHECK(verify_tuple(*t2.certificate));

  // trivial action: (X, X) <= (X) is measure-refuted, 2 > 1
  auto t3 = search_compare_tuple(trivial2(), {Clopen::whole(ss), Clopen::whole(ss)},
                                 {Clopen::whole(ss)}, cfg);
  REQUIRE(t3.kind == OutcomeKind::RefutedMeasure);
  CHECK(t3.measure->lhs == 2);
  CHECK(t3.measure->rhs == 1);
}

TEST_CASE("paradoxicality of the o2 model and the shift groupoid") {
  SearchConfig cfg;
  cfg.bound = 6;
  auto g = o2();
  auto par = search_paradoxical(g, Clopen::whole(full2()), cfg);
  REQUIRE(par.kind == OutcomeKind::Verified);
  CHECK(par.v1 == cl(full2(), {"0"}));
  CHECK(par.v2 == cl(full2(), {"1"}));
  CHECK(verify_transporter(*par.c1));
  CHECK(verify_transporter(*par.c2));
  CHECK(disjoint(par.v1, par.v2));

  SearchConfig cfg3;
  cfg3.bound = 3;
  auto dr = full_dr();
  auto par2 = search_paradoxical(dr, cl(full2(), {"0"}), cfg3);
  REQUIRE(par2.kind == OutcomeKind::Verified);
  CHECK(subset_of(par2.v1, cl(full2(), {"0"})));
  CHECK(subset_of(par2.v2, cl(full2(), {"0"})));

  auto par3 = search_paradoxical(trivial2(), cl(full2(), {"0"}), cfg);
  REQUIRE(par3.kind == OutcomeKind::RefutedMeasure);
  CHECK(par3.measure->lhs > par3.measure->rhs);
}

TEST_CASE("purely infinite scan") {
  SearchConfig cfg;
  cfg.bound = 6;
  auto rep = purely_infinite_scan(o2(), 2, cfg);
  CHECK(rep.all_verified);
  CHECK(rep.entries.size() == 1 + 2 + 4);

  auto rep2 = purely_infinite_scan(trivial2(), 1, cfg);
  CHECK(!rep2.all_verified);
  for (const auto& e : rep2.entries) CHECK(e.outcome.kind == OutcomeKind::RefutedMeasure);

  SearchConfig cfg6;
  cfg6.bound = 6;
  auto rep3 = purely_infinite_scan(golden_dr(), 2, cfg6);
  CHECK(rep3.all_verified);
}

TEST_CASE("scan runs identically with several threads") {
  SearchConfig cfg1, cfg4;
  cfg1.bound = 5;
  cfg4.bound = 5;
  cfg4.threads = 4;
  auto a = purely_infinite_scan(o2(), 2, cfg1);
  auto b = purely_infinite_scan(o2(), 2, cfg4);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].cylinder == b.entries[i].cylinder);
    CHECK(a.entries[i].outcome.kind == b.entries[i].outcome.kind);
    CHECK(a.entries[i].outcome.v1 == b.entries[i].outcome.v1);
  }
}

TEST_CASE("orbit saturation") {
  auto ss = full2();
  auto en_triv = enumerate_elements(trivial2(), 4);
  CHECK(orbit_saturation(trivial2(), en_triv, cl(ss, {"0"})) == cl(ss, {"0"}));

  auto g = o2();
  auto en = enumerate_elements(g, 5);
  CHECK(orbit_saturation(g, en, cl(ss, {"00"})) == Clopen::whole(ss));
}

TEST_CASE("minimal_check") {
  SearchConfig cfg;
  cfg.bound = 8;
  auto rep = minimal_check(o2(), 3, cfg);
  CHECK(rep.status == MinimalityReport::Verified);

  auto rep2 = minimal_check(trivial2(), 1, cfg);
  REQUIRE(rep2.status == MinimalityReport::NotMinimal);
  CHECK(full2()->format_word(*rep2.witness_cylinder) == "0");
  CHECK(*rep2.invariant_clopen == cl(full2(), {"0"}));
}

TEST_CASE("n-filling") {
  auto ss = full2();
  SearchConfig cfg3;
  cfg3.bound = 3;
  auto dr = full_dr();
  auto f1 = n_filling_check(dr, {cl(ss, {"0"})}, cfg3);
  REQUIRE(f1.verified);
  REQUIRE(f1.elements.size() == 1);
  CHECK(f1.elements[0].apply(cl(ss, {"0"})) == Clopen::whole(ss));

  SearchConfig cfg8;
  cfg8.bound = 8;
  auto f2 = n_filling_check(o2(), {cl(ss, {"00"})}, cfg8);
  REQUIRE(f2.verified);
  CHECK(f2.elements[0].apply(cl(ss, {"00"})) == Clopen::whole(ss));

  auto f3 = n_filling_check(trivial2(), {cl(ss, {"00"}), cl(ss, {"10"})}, cfg3);
  CHECK(!f3.verified);
  CHECK(f3.exhausted);
}

TEST_CASE("locally contracting witness") {
  auto ss = full2();
  SearchConfig cfg;
  cfg.bound = 4;
  auto dr = full_dr();
  auto c1 = locally_contracting_witness(dr, Clopen::whole(ss), cfg);
  REQUIRE(c1.status == ContractionOutcome::Verified);
  CHECK(*c1.witness == pe(ss, {{"", "0"}}));

  SearchConfig cfg8;
  cfg8.bound = 8;
  auto c2 = locally_contracting_witness(o2(), Clopen::whole(ss), cfg8);
  REQUIRE(c2.status == ContractionOutcome::Verified);
  CHECK(c2.witness->source() == Clopen::whole(ss));
  CHECK(subset_of(c2.witness->range(), Clopen::whole(ss)));
  CHECK(!(c2.witness->range() == Clopen::whole(ss)));

  auto c3 = locally_contracting_witness(trivial2(), cl(ss, {"0"}), cfg);
  CHECK(c3.status == ContractionOutcome::Exhausted);
}

TEST_CASE("global fixed unit scan") {
  CHECK(global_fixed_unit_scan(trivial2(), 1).size() == 2);
  CHECK(global_fixed_unit_scan(o2(), 1).empty());
  CHECK(global_fixed_unit_scan(full_dr(), 2).empty());
}

TEST_CASE("verified outcomes stay verified at larger bounds") {
  auto g = o2();
  auto ss = full2();
  SearchConfig cfg;
  std::mt19937 rng(61);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> len(0, 3);
  for (int i = 0; i < 25; ++i) {
    Word wk, wv;
    for (int j = len(rng); j > 0; --j) wk = wk.append(static_cast<Symbol>(bit(rng)));
    for (int j = len(rng); j > 0; --j) wv = wv.append(static_cast<Symbol>(bit(rng)));
    Clopen k = Clopen::cylinder(ss, wk);
    Clopen v = Clopen::cylinder(ss, wv);
    SearchConfig c4 = cfg, c6 = cfg;
    c4.bound = 4;
    c6.bound = 6;
    auto r4 = search_compare(g, k, v, c4);
    if (r4.kind == OutcomeKind::Verified) {
      auto r6 = search_compare(g, k, v, c6);
      CHECK(r6.kind == OutcomeKind::Verified);
    }
  }
}

TEST_CASE("measure monotonicity across verified certificates") {
  // on a finite group action with invariant measures, every verified
  // comparison implies the measure inequality
  auto ss = full2();
  GroupoidPresentation z2(ss, {{"phi", pe(ss, {{"0", "1"}, {"1", "0"}})}}, true);
  auto en = enumerate_elements(z2, 4);
  SearchConfig cfg;
  cfg.bound = 4;
  auto lp = invariance_lp(z2, 3);
  REQUIRE(lp.feasible);
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> bit(0, 1);
  int verified = 0;
  for (int i = 0; i < 200 && verified < 30; ++i) {
    Word wk, wv;
    for (int j = bit(rng) + 1; j > 0; --j) wk = wk.append(static_cast<Symbol>(bit(rng)));
    for (int j = bit(rng); j > 0; --j) wv = wv.append(static_cast<Symbol>(bit(rng)));
    Clopen k = Clopen::cylinder(ss, wk);
    Clopen v = Clopen::cylinder(ss, wv);
    auto r = search_compare(z2, en, k, v, cfg);
    if (r.kind != OutcomeKind::Verified) continue;
    ++verified;
    CHECK(lp.sample->of(k) <= lp.sample->of(v));
  }
  CHECK(verified > 0);
}
