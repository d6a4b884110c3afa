#include "demazure/serialize.hpp"

#include "demazure/expr.hpp"

namespace demazure {

Json to_json(const Ring& ring, const QElem& q) {
  Json den = Json::array();
  for (const auto& [key, power] : q.den())
    den.push_back({{"kind", key.kind == FactorKey::Kind::x ? "x" : "hat"},
                   {"root", ring.datum().root_name(key.root)},
                   {"power", power}});
  return {{"num", ring.to_string(q.num())}, {"den", den}};
}

QElem qelem_from_json(const Ring& ring, const Json& j) {
  const RootDatum& d = ring.datum();
  QElem::Denominator den;
  for (const auto& f : j.at("den")) {
    const std::string kind = f.at("kind").get<std::string>();
    const std::string root = f.at("root").get<std::string>();
    const auto index = d.root_index(parse_weight(d, root));
    if (!index) throw AlgebraError("'" + root + "' is not a root");
    if (kind != "x" && kind != "hat") throw AlgebraError("unknown factor kind '" + kind + "'");
    den.emplace_back(FactorKey{kind == "x" ? FactorKey::Kind::x : FactorKey::Kind::hat, *index},
                     f.at("power").get<int>());
  }
  return QElem(ring, ring.parse_poly(j.at("num").get<std::string>()), std::move(den));
}

Json to_json(const Ring& ring, const StructureTable& table) {
  const RootDatum& d = ring.datum();
  Json out = Json::array();
  auto word = [&](WeylElement w) { return d.format_word(table.words[w.id]); };
  for (const auto& e : table.entries)
    out.push_back({{"u", word(e.u)},
                   {"v", word(e.v)},
                   {"w", word(e.w)},
                   {"family", table.family},
                   {"backend", table.backend},
                   {"value", to_json(ring, e.value)}});
  return out;
}

StructureTable table_from_json(const Ring& ring, const Json& j) {
  const RootDatum& d = ring.datum();
  StructureTable t;
  t.datum = d.label();
  t.words.assign(d.order(), Sequence{});
  for (auto w : d.weyl_elements()) t.words[w.id] = d.reduced_word(w);
  auto element = [&](const Json& field) {
    const std::string text = field.get<std::string>();
    const Sequence seq = d.parse_word(text);
    if (!d.is_reduced(seq)) throw AlgebraError("word '" + text + "' is not reduced");
    const WeylElement w = d.product(seq);
    t.words[w.id] = seq;
    return w;
  };
  for (const auto& r : j) {
    t.family = r.at("family").get<std::string>();
    t.backend = r.at("backend").get<std::string>();
    TableEntry e;
    e.u = element(r.at("u"));
    e.v = element(r.at("v"));
    e.w = element(r.at("w"));
    e.value = qelem_from_json(ring, r.at("value"));
    t.entries.push_back(std::move(e));
  }
  return t;
}

Json report_to_json(const std::vector<CheckResult>& checks) {
  bool all = true;
  Json list = Json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    Json disc = Json::array();
    for (const auto& d : c.discrepancies)
      disc.push_back({{"location", d.location}, {"formula", d.formula}, {"oracle", d.oracle}});
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"discrepancies", disc}});
  }
  return {{"passed", all}, {"checks", list}};
}

}  // namespace demazure
