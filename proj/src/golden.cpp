#include "demazure/golden.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "demazure/expr.hpp"
#include "demazure/session.hpp"

namespace demazure {

namespace {

using Json = nlohmann::json;

WeylElement element(const RootDatum& d, const Json& entry, const char* field) {
  const std::string text = entry.at(field).get<std::string>();
  return text.empty() ? d.identity() : d.parse_element(text);
}

CheckResult run_case(const Json& c, const std::string& file) {
  SessionConfig config;
  config.type = c.at("type").get<std::string>();
  config.lattice = parse_lattice(c.value("lattice", std::string("sc")));
  if (c.contains("fgl")) {
    config.law = parse_law(c.at("fgl").get<std::string>());
    config.law_given = true;
  }
  config.family = c.value("family", std::string("x"));
  config.word_overrides = c.value("words", std::vector<std::string>{});
  Session s = open_session(config);
  const Ring& ring = *s.ring;
  const RootDatum& d = *s.datum;

  CheckResult r{file + ": " + c.value("description", config.type + " " + config.family + " " +
                                                        ring.backend().name()),
                true, "", {}};
  StructureConstants sc(*s.basis);
  std::optional<StableConstants> stable;
  int count = 0;
  auto name = [&](WeylElement w) {
    const std::string t = d.format_word(s.basis->word(w));
    return t.empty() ? std::string("e") : t;
  };
  for (const auto& e : c.at("entries")) {
    ++count;
    const std::string kind = e.at("kind").get<std::string>();
    const std::string source = e.value("source", std::string());
    const std::string note = e.contains("note") ? " [" + e.at("note").get<std::string>() + "]" : "";
    if (kind == "product") {
      const WeylElement u = element(d, e, "u"), v = element(d, e, "v");
      std::vector<QElem> expected(d.order(), ring.zero());
      for (const auto& [w, expr] : e.at("expansion").items())
        expected[(w.empty() ? d.identity() : d.parse_element(w)).id] = parse_expression(ring, expr.get<std::string>());
      const auto oracle = sc.oracle(u, v);
      for (auto w : d.weyl_elements()) {
        const QElem f = d.bruhat_leq(u, w) && d.bruhat_leq(v, w) ? sc.formula(u, v, w) : ring.zero();
        const std::string where = "u=" + name(u) + " v=" + name(v) + " w=" + name(w) + " (" + source + ")" + note;
        if (!(f == expected[w.id])) r.fail(where + " formula", ring.to_string(f), ring.to_string(expected[w.id]));
        if (!(oracle[w.id] == expected[w.id]))
          r.fail(where + " oracle", ring.to_string(oracle[w.id]), ring.to_string(expected[w.id]));
      }
    } else if (kind == "constant" || kind == "stable") {
      const WeylElement u = element(d, e, "u"), v = element(d, e, "v"), w = element(d, e, "w");
      const QElem expected = parse_expression(ring, e.at("expected").get<std::string>());
      const std::string where = "u=" + name(u) + " v=" + name(v) + " w=" + name(w) + " (" + source + ")" + note;
      if (kind == "constant") {
        const QElem f = sc.formula(u, v, w);
        const QElem o = sc.oracle(u, v)[w.id];
        if (!(f == expected)) r.fail(where + " formula", ring.to_string(f), ring.to_string(expected));
        if (!(o == expected)) r.fail(where + " oracle", ring.to_string(o), ring.to_string(expected));
      } else {
        if (!stable) stable.emplace(*s.basis);
        const QElem o = stable->oracle(u, v)[w.id];
        if (!(o == expected)) r.fail(where + " oracle", ring.to_string(o), ring.to_string(expected));
      }
    } else if (kind == "restriction") {
      const WeylElement w = element(d, e, "w"), v = element(d, e, "v");
      const QElem expected = parse_expression(ring, e.at("expected").get<std::string>());
      const QElem b = s.basis->b(v, w);
      if (!(b == expected))
        r.fail("b_{v,I_w} v=" + name(v) + " w=" + name(w) + " (" + source + ")" + note, ring.to_string(b),
               ring.to_string(expected));
    } else {
      throw ConfigError("unknown corpus entry kind '" + kind + "' in " + file);
    }
  }
  r.detail = std::to_string(count) + " entries";
  return r;
}

}  // namespace

std::vector<CheckResult> run_golden_file(const std::string& path, const GoldenFilter& filter) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("malformed corpus file '" + path + "': " + e.what());
  }
  const std::string file = std::filesystem::path(path).filename().string();
  std::vector<CheckResult> out;
  for (const auto& c : j.at("cases")) {
    if (filter.type && c.at("type").get<std::string>() != *filter.type) continue;
    if (filter.family && c.value("family", std::string("x")) != *filter.family) continue;
    if (filter.fgl && c.value("fgl", std::string()) != *filter.fgl) continue;
    try {
      out.push_back(run_case(c, file));
    } catch (const AlgebraError& e) {
      CheckResult r{file, false, e.what(), {}};
      out.push_back(std::move(r));
    } catch (const RootDatumError& e) {
      throw ConfigError(file + ": " + e.what());
    }
  }
  return out;
}

std::vector<CheckResult> run_golden_corpus(const std::string& dir, const GoldenFilter& filter) {
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.path().extension() == ".json") files.push_back(entry.path().string());
  if (ec) throw ConfigError("cannot read corpus directory '" + dir + "'");
  std::sort(files.begin(), files.end());
  std::vector<CheckResult> out;
  for (const auto& f : files) {
    auto part = run_golden_file(f, filter);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace demazure
