#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ample/catalog.hpp"
#include "ample/measures.hpp"
#include "ample/monoid.hpp"
#include "ample/search.hpp"
#include "ample/system_file.hpp"
#include "ample/type_semigroup.hpp"
#include "ample/version.hpp"

namespace ample {

// Reports are ordered JSON documents; certificate sections are deterministic
// and every certificate re-verifies when the report is fed back to the
// verifier ('verify' subcommand / verify_report below).
using Json = nlohmann::ordered_json;

namespace rpt {

inline std::string word_str(const Subshift& ss, const Word& w) {
  std::string s = ss.format_word(w);
  return s.empty() ? "-" : s;
}

inline Word parse_word(const Subshift& ss, const std::string& s) { return ss.parse_word(s); }

inline Json clopen_json(const Clopen& c) {
  Json arr = Json::array();
  for (const auto& w : c.words()) arr.push_back(word_str(*c.space(), w));
  return arr;
}

inline Clopen clopen_from(const SubshiftPtr& ss, const Json& j) {
  std::vector<Word> words;
  for (const auto& s : j) words.push_back(ss->parse_word(s.get<std::string>()));
  return Clopen::canonical(ss, std::move(words));
}

inline Json pairs_json(const Subshift& ss, const PrefixExchange& p) {
  Json arr = Json::array();
  for (const auto& [u, v] : p.pairs())
    arr.push_back(Json::array({word_str(ss, u), word_str(ss, v)}));
  return arr;
}

inline PrefixExchange exchange_from(const SubshiftPtr& ss, const Json& j) {
  std::vector<PrefixExchange::Pair> ps;
  for (const auto& pair : j)
    ps.push_back({ss->parse_word(pair.at(0).get<std::string>()),
                  ss->parse_word(pair.at(1).get<std::string>())});
  return PrefixExchange(ss, std::move(ps));
}

inline Json rational_json(const Rational& q) {
  return Json::array({numerator_str(q), denominator_str(q)});
}

inline Rational rational_from(const Json& j) {
  return parse_rational(j.at(0).get<std::string>(), j.at(1).get<std::string>());
}

inline Json transporter_json(const Transporter& c) {
  const Subshift& ss = *c.subject.space();
  Json pieces = Json::array();
  for (const auto& p : c.pieces)
    pieces.push_back(Json{{"word", p.label}, {"pairs", pairs_json(ss, p.map)}});
  return Json{{"type", "transporter"},
              {"subject", clopen_json(c.subject)},
              {"target", clopen_json(c.target)},
              {"pieces", pieces}};
}

inline Transporter transporter_from(const SubshiftPtr& ss, const Json& j) {
  Transporter c;
  c.subject = clopen_from(ss, j.at("subject"));
  c.target = clopen_from(ss, j.at("target"));
  for (const auto& p : j.at("pieces"))
    c.pieces.push_back({p.at("word").get<std::string>(), exchange_from(ss, p.at("pairs"))});
  return c;
}

inline Json tuple_certificate_json(const TupleCertificate& c) {
  const Subshift& ss = *c.subject.front().space();
  Json subject = Json::array();
  for (const auto& a : c.subject) subject.push_back(clopen_json(a));
  Json target = Json::array();
  for (const auto& b : c.target) target.push_back(clopen_json(b));
  Json entries = Json::array();
  for (const auto& e : c.entries)
    entries.push_back(Json{{"from", e.source_index},
                           {"to", e.target_index},
                           {"word", e.label},
                           {"pairs", pairs_json(ss, e.map)}});
  return Json{{"type", "tuple"}, {"subject", subject}, {"target", target}, {"entries", entries}};
}

inline TupleCertificate tuple_certificate_from(const SubshiftPtr& ss, const Json& j) {
  TupleCertificate c;
  for (const auto& a : j.at("subject")) c.subject.push_back(clopen_from(ss, a));
  for (const auto& b : j.at("target")) c.target.push_back(clopen_from(ss, b));
  for (const auto& e : j.at("entries"))
    c.entries.push_back({e.at("from").get<int>(), e.at("to").get<int>(),
                         e.at("word").get<std::string>(), exchange_from(ss, e.at("pairs"))});
  return c;
}

inline Json measure_json(const MeasureVector& m) {
  const Subshift& ss = *m.space;
  Json values = Json::object();
  for (std::size_t i = 0; i < m.cells.size(); ++i)
    values[word_str(ss, m.cells[i])] = rational_json(m.values[i]);
  return Json{{"depth", m.depth}, {"values", values}};
}

inline MeasureVector measure_from(const SubshiftPtr& ss, const Json& j) {
  MeasureVector m;
  m.space = ss;
  m.depth = j.at("depth").get<std::size_t>();
  m.cells = Clopen::whole(ss).refine(m.depth);
  m.values.assign(m.cells.size(), Rational(0));
  const auto& values = j.at("values");
  for (std::size_t i = 0; i < m.cells.size(); ++i) {
    auto key = word_str(*ss, m.cells[i]);
    if (values.contains(key)) m.values[i] = rational_from(values.at(key));
  }
  return m;
}

inline Json farkas_json(const std::vector<FarkasEntry>& entries) {
  Json arr = Json::array();
  for (const auto& e : entries)
    arr.push_back(Json{{"row", e.row}, {"coeff", rational_json(e.coeff)}});
  return arr;
}

inline std::vector<FarkasEntry> farkas_from(const Json& j) {
  std::vector<FarkasEntry> out;
  for (const auto& e : j)
    out.push_back({e.at("row").get<std::string>(), rational_from(e.at("coeff"))});
  return out;
}

inline Json system_json(const GroupoidPresentation& g) {
  return Json{{"description", dump_system(g)}};
}

inline GroupoidPresentation system_from(const Json& j) {
  return parse_presentation(j.at("description").get<std::string>());
}

inline Json measure_witness_json(const MeasureWitness& w) {
  return Json{{"witness", measure_json(w.witness)},
              {"lhs", rational_json(w.lhs)},
              {"rhs", rational_json(w.rhs)}};
}

inline Json outcome_json(OutcomeKind k) { return to_string(k); }

} // namespace rpt

// ---------------------------------------------------------------------------
// report verification

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(const std::string& what) {
    ok = false;
    failures.push_back(what);
  }
  void check(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
};

// Re-check every certificate, measure and Farkas section of a report against
// the embedded system description. Timing and echo fields are ignored.
inline VerifyResult verify_report(const Json& report) {
  VerifyResult res;
  if (!report.contains("system")) {
    res.fail("report has no system block");
    return res;
  }
  GroupoidPresentation g = rpt::system_from(report.at("system"));
  SubshiftPtr ss = g.space();

  if (report.contains("certificates")) {
    for (const auto& c : report.at("certificates")) {
      std::string type = c.value("type", "");
      if (type == "transporter") {
        res.check(verify_transporter(rpt::transporter_from(ss, c)),
                  "transporter certificate failed verification");
      } else if (type == "tuple") {
        TupleCertificate tc = rpt::tuple_certificate_from(ss, c);
        bool exact = c.value("exact", false);
        res.check(exact ? verify_tuple_exact(tc) : verify_tuple(tc),
                  "tuple certificate failed verification");
      } else {
        res.fail("unknown certificate type '" + type + "'");
      }
    }
  }

  if (report.contains("measure_witness")) {
    const auto& w = report.at("measure_witness");
    MeasureVector m = rpt::measure_from(ss, w.at("witness"));
    res.check(check_invariant(g, m), "measure witness is not invariant");
    res.check(rpt::rational_from(w.at("lhs")) > rpt::rational_from(w.at("rhs")),
              "measure witness does not violate the inequality");
  }

  if (report.contains("measure_sample")) {
    MeasureVector m = rpt::measure_from(ss, report.at("measure_sample"));
    res.check(check_invariant(g, m), "measure sample is not invariant");
  }

  if (report.contains("farkas")) {
    const auto& f = report.at("farkas");
    std::string kind = f.value("kind", "invariance");
    if (kind == "invariance") {
      res.check(recheck_invariance_farkas(g, f.at("depth").get<std::size_t>(),
                                          rpt::farkas_from(f.at("entries"))),
                "invariance Farkas certificate failed recheck");
    } else {
      res.fail("unknown farkas kind '" + kind + "'");
    }
  }

  if (report.contains("state")) {
    const auto& st = report.at("state");
    MonoidPresentation m;
    for (const auto& gname : st.at("generators")) m.generators.push_back(gname.get<std::string>());
    for (const auto& rel : st.at("relations")) {
      MonoidPresentation::Relation r;
      r.name = rel.at("name").get<std::string>();
      for (const auto& t : rel.at("lhs"))
        r.lhs.terms.push_back({t.at(0).get<int>(), t.at(1).get<long>()});
      for (const auto& t : rel.at("rhs"))
        r.rhs.terms.push_back({t.at(0).get<int>(), t.at(1).get<long>()});
      m.relations.push_back(std::move(r));
    }
    std::string target = st.at("target").get<std::string>();
    if (st.contains("values")) {
      std::vector<Rational> values;
      for (const auto& v : st.at("values")) values.push_back(rpt::rational_from(v));
      int t = m.generator_index(target);
      res.check(t >= 0 && values[static_cast<std::size_t>(t)] == 1,
                "state is not normalized at the target");
      for (const auto& r : m.relations)
        res.check(evaluate_side(r.lhs, values) <= evaluate_side(r.rhs, values),
                  "state violates relation " + r.name);
      for (const auto& v : values)
        res.check(v >= 0, "state has a negative value");
    }
    if (st.contains("farkas"))
      res.check(recheck_state_farkas(m, target, rpt::farkas_from(st.at("farkas"))),
                "state Farkas certificate failed recheck");
  }

  if (report.contains("filling")) {
    const auto& f = report.at("filling");
    Clopen covered = Clopen::empty(ss);
    std::size_t i = 0;
    for (const auto& e : f.at("elements")) {
      PrefixExchange m = rpt::exchange_from(ss, e.at("pairs"));
      res.check(!m.validate(), "filling element is not a valid bisection");
      Clopen w = rpt::clopen_from(ss, f.at("sets").at(i));
      covered = union_of(covered, m.apply(w));
      ++i;
    }
    res.check(covered.is_whole(), "filling images do not cover the space");
  }

  if (report.contains("contraction")) {
    const auto& c = report.at("contraction");
    PrefixExchange m = rpt::exchange_from(ss, c.at("pairs"));
    Clopen v = rpt::clopen_from(ss, c.at("set"));
    res.check(!m.validate(), "contraction witness is not a valid bisection");
    res.check(m.source() == v, "contraction witness source differs from V");
    res.check(subset_of(m.range(), v) && !(m.range() == v),
              "contraction witness range is not strictly inside V");
  }

  return res;
}

} // namespace ample
