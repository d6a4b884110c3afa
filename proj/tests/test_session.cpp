#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "demazure/serialize.hpp"
#include "demazure/session.hpp"

using namespace demazure;

namespace {

Session open(const char* type, const char* family, const char* law = nullptr) {
  SessionConfig c;
  c.type = type;
  c.family = family;
  if (law) {
    c.law = parse_law(law);
    c.law_given = true;
  }
  return open_session(c);
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/demazure_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("emitted tables parse back to identical bytes") {
  for (auto [type, family, law] : {std::tuple{"A2", "x", "additive"}, {"A2", "y", "multiplicative"},
                                   {"B2", "t", nullptr}, {"A2", "tau", nullptr}}) {
    Session s = open(type, family, law);
    const StructureTable t = build_table(*s.basis, Provenance::formula);
    const std::string text = to_json(*s.ring, t).dump(2);
    const StructureTable back = table_from_json(*s.ring, Json::parse(text));
    CHECK(back.entries.size() == t.entries.size());
    CHECK(to_json(*s.ring, back).dump(2) == text);
  }
}

TEST_CASE("tables do not depend on the worker count") {
  Session s = open("B2", "y", "multiplicative");
  const std::string one = to_json(*s.ring, build_table(*s.basis, Provenance::formula, 1)).dump();
  CHECK(to_json(*s.ring, build_table(*s.basis, Provenance::formula, 3)).dump() == one);
  CHECK(to_json(*s.ring, build_table(*s.basis, Provenance::oracle, 4)).dump() == one);
}

TEST_CASE("session configuration") {
  CHECK(open("A2", "t").ring->backend() == Backend::additive(true));
  CHECK(open("A2", "tau").ring->backend() == Backend::multiplicative(true));
  CHECK_THROWS_AS(open("A2", "tau", "additive"), ConfigError);
  CHECK_THROWS_AS(open("A2", "nope"), ConfigError);
  CHECK_THROWS_AS(parse_lattice("weird"), ConfigError);

  SessionConfig c;
  c.type = "A2";
  c.words = "jcompat:1";
  Session j = open_session(c);
  CHECK(j.parabolic == std::vector<int>{0});

  c.words = "file:" + temp_file("words.json", R"j(["", "1", "2", "12", "21", "212"])j");
  Session w = open_session(c);
  CHECK(w.datum->format_word(w.basis->word(w.datum->longest())) == "212");
  c.words = "file:" + temp_file("bad_words.json", R"j(["", "1", "2", "12", "21"])j");
  CHECK_THROWS_AS(open_session(c), ConfigError);
}

TEST_CASE("custom families and Cartan files") {
  SessionConfig c;
  c.cartan_file = temp_file("cartan.json", R"j({"label": "B2", "cartan": [[2, -2], [-1, 2]]})j");
  c.family = "custom:" + temp_file("family.json", R"j({"name": "xx", "a": ["1/x(a1)", "1/x(a2)"],
                                                       "b": ["-1/x(a1)", "-1/x(a2)"]})j");
  Session s = open_session(c);
  CHECK(s.datum->order() == 8);
  CHECK(s.family().name() == "xx");
  const auto custom = build_table(*s.basis, Provenance::formula);
  SessionConfig x = c;
  x.family = "x";
  Session sx = open_session(x);
  const auto builtin = build_table(*sx.basis, Provenance::formula);
  REQUIRE(custom.entries.size() == builtin.entries.size());
  for (std::size_t i = 0; i < custom.entries.size(); ++i) CHECK(custom.entries[i].value == builtin.entries[i].value);
}
