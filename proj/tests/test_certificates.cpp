#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ample/certificates.hpp"
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

PrefixExchange psi() { return pe(full2(), {{"0", "11"}, {"11", "10"}, {"10", "0"}}); }

GroupoidPresentation o2() {
  auto ss = full2();
  return GroupoidPresentation(
      ss,
      {{"phi", pe(ss, {{"0", "1"}, {"1", "0"}})},
       {"psi", pe(ss, {{"0", "11"}, {"11", "10"}, {"10", "0"}})}},
      true);
}

// verified certificates harvested from searches on the o2 model
std::vector<Transporter> random_verified(int n, int seed, int depth) {
  std::mt19937 rng(static_cast<unsigned>(seed));
  auto g = o2();
  auto ss = full2();
  auto en = enumerate_elements(g, 5);
  SearchConfig cfg;
  cfg.bound = 5;
  std::vector<Transporter> out;
  std::uniform_int_distribution<int> len(0, depth);
  std::uniform_int_distribution<int> bit(0, 1);
  auto random_cyl = [&] {
    Word w;
    int L = len(rng);
    for (int i = 0; i < L; ++i) w = w.append(static_cast<Symbol>(bit(rng)));
    return Clopen::cylinder(ss, w);
  };
  while (static_cast<int>(out.size()) < n) {
    Clopen k = random_cyl();
    Clopen v = random_cyl();
    auto res = search_compare(g, en, k, v, cfg);
    if (res.kind == OutcomeKind::Verified && !res.certificate->pieces.empty())
      out.push_back(std::move(*res.certificate));
  }
  return out;
}

} // namespace

TEST_CASE("verify_transporter") {
  auto ss = full2();
  // identity piece carries N_0 into the whole space
  Transporter c1{cl(ss, {"0"}), Clopen::whole(ss),
                 {{"id", PrefixExchange::identity_on(cl(ss, {"0"}))}}};
  CHECK(verify_transporter(c1));

  // psi restricted to N_0 maps it onto N_11
  Transporter c2{cl(ss, {"0"}), cl(ss, {"11"}), {{"psi", psi().restrict_to(cl(ss, {"0"}))}}};
  CHECK(verify_transporter(c2));

  // overlapping ranges are rejected
  Transporter c3{cl(ss, {"0"}), Clopen::whole(ss),
                 {{"id", PrefixExchange::identity_on(cl(ss, {"0"}))},
                  {"id2", PrefixExchange::identity_on(cl(ss, {"00"}))}}};
  CHECK(!verify_transporter(c3));

  // missing coverage is rejected
  Transporter c4{Clopen::whole(ss), Clopen::whole(ss),
                 {{"id", PrefixExchange::identity_on(cl(ss, {"0"}))}}};
  CHECK(!verify_transporter(c4));

  // ranges must sit inside the target
  Transporter c5{cl(ss, {"0"}), cl(ss, {"00"}),
                 {{"id", PrefixExchange::identity_on(cl(ss, {"0"}))}}};
  CHECK(!verify_transporter(c5));
}

TEST_CASE("verify_tuple") {
  auto ss = full2();
  TupleCertificate c;
  c.subject = {cl(ss, {"0"}), cl(ss, {"1"})};
  c.target = {Clopen::whole(ss)};
  c.entries = {{0, 0, "id", PrefixExchange::identity_on(cl(ss, {"0"}))},
               {1, 0, "id", PrefixExchange::identity_on(cl(ss, {"1"}))}};
  CHECK(verify_tuple(c));
  CHECK(verify_tuple_exact(c));

  // same ranges sent to one slot must stay disjoint
  TupleCertificate bad = c;
  bad.entries[1] = {1, 0, "phi", pe(ss, {{"1", "0"}})};
  CHECK(!verify_tuple(bad));

  // exact tiling fails when the target is not fully covered
  TupleCertificate partial = c;
  partial.subject = {cl(ss, {"0"}), cl(ss, {"10"})};
  partial.entries[1] = {1, 0, "id", PrefixExchange::identity_on(cl(ss, {"10"}))};
  CHECK(verify_tuple(partial));
  CHECK(!verify_tuple_exact(partial));
}

TEST_CASE("compose_certificates follows the two psi steps") {
  auto ss = full2();
  // N_0 < N_11 via psi, then N_11 < N_10 via psi
  Transporter c1{cl(ss, {"0"}), cl(ss, {"11"}), {{"psi", psi().restrict_to(cl(ss, {"0"}))}}};
  Transporter c2{cl(ss, {"11"}), cl(ss, {"10"}), {{"psi", psi().restrict_to(cl(ss, {"11"}))}}};
  REQUIRE(verify_transporter(c1));
  REQUIRE(verify_transporter(c2));
  Transporter c = compose_certificates(c1, c2);
  CHECK(verify_transporter(c));
  REQUIRE(c.pieces.size() == 1);
  // psi^2 maps N_0 onto N_10
  CHECK(c.pieces[0].map.apply(cl(ss, {"0"})) == cl(ss, {"10"}));

  // identity on the left leaves pieces unchanged up to restriction
  Transporter idc{cl(ss, {"11"}), cl(ss, {"11"}),
                  {{"id", PrefixExchange::identity_on(cl(ss, {"11"}))}}};
  Transporter c1_id = compose_certificates(c1, idc);
  CHECK(verify_transporter(c1_id));
  CHECK(c1_id.pieces[0].map == psi().restrict_to(cl(ss, {"0"})));

  Transporter mism{cl(ss, {"10"}), cl(ss, {"0"}), {}};
  CHECK_THROWS_AS(compose_certificates(c1, mism), std::invalid_argument);
}

TEST_CASE("composition of random verified certificates verifies") {
  // chains a < b via c1 and b < c via c2 with matching middle
  auto g = o2();
  auto ss = full2();
  auto en = enumerate_elements(g, 5);
  SearchConfig cfg;
  cfg.bound = 5;
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> bit(0, 1);
  int done = 0;
  while (done < 50) {
    auto word = [&](int len) {
      Word w;
      for (int i = 0; i < len; ++i) w = w.append(static_cast<Symbol>(bit(rng)));
      return w;
    };
    Clopen a = Clopen::cylinder(ss, word(bit(rng) + 1));
    Clopen b = Clopen::cylinder(ss, word(bit(rng) + 2));
    Clopen c = Clopen::cylinder(ss, word(bit(rng) + 2));
    auto r1 = search_compare(g, en, a, b, cfg);
    auto r2 = search_compare(g, en, b, c, cfg);
    if (r1.kind != OutcomeKind::Verified || r2.kind != OutcomeKind::Verified) continue;
    Transporter comp = compose_certificates(*r1.certificate, *r2.certificate);
    CHECK(verify_transporter(comp));
    ++done;
  }
}

TEST_CASE("normalize_certificate") {
  auto ss = full2();
  // already single-piece: unchanged up to restriction bookkeeping
  Transporter c2{cl(ss, {"0"}), cl(ss, {"11"}), {{"psi", psi().restrict_to(cl(ss, {"0"}))}}};
  Transporter n2 = normalize_certificate(c2);
  CHECK(verify_transporter(n2));
  REQUIRE(n2.pieces.size() == 1);
  CHECK(n2.pieces[0].map == c2.pieces[0].map);

  // two identity pieces both covering N_0 collapse to one; the first listed
  // piece wins on the overlap, which disjointifies the ranges
  Transporter c3{cl(ss, {"0"}), Clopen::whole(ss),
                 {{"id", PrefixExchange::identity_on(cl(ss, {"0"}))},
                  {"id", PrefixExchange::identity_on(cl(ss, {"01"}))}}};
  Transporter n3 = normalize_certificate(c3);
  CHECK(verify_transporter(n3));
  REQUIRE(n3.pieces.size() == 1);
  CHECK(n3.pieces[0].map == PrefixExchange::identity_on(cl(ss, {"0"})));
  CHECK(n3.pieces[0].map.source() == c3.subject);

  // normalization of a searched certificate: one piece, source = subject
  auto g = o2();
  SearchConfig cfg;
  cfg.bound = 6;
  auto res = search_compare(g, Clopen::whole(ss), cl(ss, {"00"}), cfg);
  REQUIRE(res.kind == OutcomeKind::Verified);
  Transporter norm = normalize_certificate(*res.certificate);
  CHECK(verify_transporter(norm));
  REQUIRE(norm.pieces.size() == 1);
  CHECK(norm.pieces[0].map.source() == Clopen::whole(ss));
  CHECK(subset_of(norm.pieces[0].map.range(), cl(ss, {"00"})));
}

TEST_CASE("normalization property on random certificates") {
  for (auto& c : random_verified(40, 7, 3)) {
    Transporter n = normalize_certificate(c);
    CHECK(verify_transporter(n));
    REQUIRE(n.pieces.size() == 1);
    CHECK(n.pieces[0].map.source() == c.subject);
  }
}

TEST_CASE("refine_certificate") {
  auto ss = full2();
  Transporter idc{Clopen::whole(ss), Clopen::whole(ss),
                  {{"id", PrefixExchange::identity(ss)}}};
  Transporter r1 = refine_certificate(idc, 1);
  REQUIRE(r1.pieces.size() == 1);
  CHECK(r1.pieces[0].map.pairs() ==
        std::vector<PrefixExchange::Pair>{{ss->parse_word("0"), ss->parse_word("0")},
                                          {ss->parse_word("1"), ss->parse_word("1")}});

  Transporter psic{Clopen::whole(ss), Clopen::whole(ss), {{"psi", psi()}}};
  Transporter r3 = refine_certificate(psic, 3);
  REQUIRE(r3.pieces.size() == 1);
  CHECK(r3.pieces[0].map.pairs().size() == 6);
  CHECK(verify_transporter(r3));
}

TEST_CASE("refinement preserves verification") {
  for (auto& c : random_verified(25, 19, 3)) {
    for (std::size_t d : {2u, 4u, 6u, 8u}) {
      Transporter r = refine_certificate(c, d);
      CHECK(verify_transporter(r));
      // same point map: images of the subject agree
      for (std::size_t i = 0; i < c.pieces.size(); ++i)
        CHECK(r.pieces[i].map.apply(c.subject) == c.pieces[i].map.apply(c.subject));
    }
  }
}
