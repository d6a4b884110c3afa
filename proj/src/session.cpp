#include "demazure/session.hpp"

#include <fstream>

#include <json.hpp>

#include "demazure/expr.hpp"

namespace demazure {

namespace {

using Json = nlohmann::json;

Json read_json(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed ") + what + " file '" + path + "': " + e.what());
  }
}

std::shared_ptr<const RootDatum> make_datum(const SessionConfig& c) {
  const RootDatumOptions opts{c.lattice};
  if (!c.type.empty() && !c.cartan_file.empty()) throw ConfigError("give either --type or --cartan, not both");
  if (c.type.empty() && c.cartan_file.empty()) throw ConfigError("a root datum is required (--type or --cartan)");
  try {
    if (!c.type.empty()) return std::make_shared<const RootDatum>(RootDatum::from_type(c.type, opts));
    const Json j = read_json(c.cartan_file, "Cartan");
    const Json& m = j.is_object() ? j.at("cartan") : j;
    const std::string label = j.is_object() ? j.value("label", std::string()) : std::string();
    return std::make_shared<const RootDatum>(
        RootDatum::from_cartan(m.get<std::vector<std::vector<int>>>(), opts, label));
  } catch (const RootDatumError& e) {
    throw ConfigError(e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad Cartan matrix: ") + e.what());
  }
}

struct CustomSpec {
  std::string name = "custom";
  bool with_h = false, with_v = false;
  std::vector<std::string> a, b;
};

CustomSpec read_custom(const std::string& path) {
  const Json j = read_json(path, "family");
  CustomSpec s;
  try {
    s.name = j.value("name", s.name);
    s.with_h = j.value("with_h", false);
    s.with_v = j.value("with_v", false);
    s.a = j.at("a").get<std::vector<std::string>>();
    s.b = j.at("b").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw ConfigError("bad family file '" + path + "': " + e.what());
  }
  return s;
}

std::vector<int> parse_parabolic(const RootDatum& d, const std::string& text) {
  std::vector<int> out;
  try {
    for (int i : d.parse_word(text)) out.push_back(i);
  } catch (const RootDatumError& e) {
    throw ConfigError(std::string("bad parabolic subset: ") + e.what());
  }
  return out;
}

std::vector<Sequence> choose_words(const SessionConfig& c, const RootDatum& d, std::vector<int>& parabolic) {
  std::vector<Sequence> words;
  const std::string& policy = c.words;
  try {
    if (policy == "lexmin") {
      words = lexmin_words(d);
    } else if (policy.rfind("jcompat:", 0) == 0) {
      parabolic = parse_parabolic(d, policy.substr(8));
      words = d.j_compatible_words(parabolic);
    } else if (policy.rfind("file:", 0) == 0) {
      const Json j = read_json(policy.substr(5), "words");
      if (!j.is_array()) throw ConfigError("words file must hold a JSON array of words");
      words.assign(d.order(), Sequence{});
      std::vector<bool> seen(d.order(), false);
      for (const auto& item : j) {
        const Sequence seq = d.parse_word(item.get<std::string>());
        if (!d.is_reduced(seq)) throw ConfigError("word '" + item.get<std::string>() + "' is not reduced");
        const WeylElement w = d.product(seq);
        if (seen[w.id]) throw ConfigError("two words for element " + d.format_element(w));
        seen[w.id] = true;
        words[w.id] = seq;
      }
      for (auto w : d.weyl_elements())
        if (!seen[w.id]) throw ConfigError("words file has no word for element " + d.format_element(w));
    } else {
      throw ConfigError("unknown word policy '" + policy + "'");
    }
    for (const auto& text : c.word_overrides) {
      const Sequence seq = d.parse_word(text);
      if (!d.is_reduced(seq)) throw ConfigError("word '" + text + "' is not reduced");
      words[d.product(seq).id] = seq;
    }
    validate_words(d, words);
  } catch (const RootDatumError& e) {
    throw ConfigError(e.what());
  } catch (const AlgebraError& e) {
    throw ConfigError(e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad words file: ") + e.what());
  }
  return words;
}

}  // namespace

Lattice parse_lattice(const std::string& text) {
  if (text == "sc" || text == "simply-connected" || text == "simply_connected") return Lattice::simply_connected;
  if (text == "adj" || text == "adjoint") return Lattice::adjoint;
  throw ConfigError("unknown lattice '" + text + "' (sc | adjoint)");
}

std::string lattice_name(Lattice lattice) { return lattice == Lattice::adjoint ? "adjoint" : "sc"; }

Law parse_law(const std::string& text) {
  if (text == "additive" || text == "a") return Law::additive;
  if (text == "multiplicative" || text == "m") return Law::multiplicative;
  throw ConfigError("unknown formal group law '" + text + "' (additive | multiplicative)");
}

Session open_session(const SessionConfig& c) {
  Session s;
  s.datum = make_datum(c);

  const std::string& fam = c.family;
  std::optional<CustomSpec> custom;
  Backend backend;
  auto require_law = [&](Law law, const char* why) {
    if (c.law_given && c.law != law)
      throw ConfigError("family '" + fam + "' requires the " + (law == Law::additive ? "additive" : "multiplicative") +
                        " law" + why);
  };
  if (fam == "x" || fam == "y") {
    backend = c.law == Law::additive ? Backend::additive() : Backend::multiplicative();
  } else if (fam == "t" || fam == "su") {
    require_law(Law::additive, " with h");
    backend = Backend::additive(true);
  } else if (fam == "tau") {
    require_law(Law::multiplicative, " with v");
    backend = Backend::multiplicative(true);
  } else if (fam.rfind("custom:", 0) == 0) {
    custom = read_custom(fam.substr(7));
    if (custom->with_h && custom->with_v) throw ConfigError("a family cannot use both h and v");
    Law law = c.law;
    if (custom->with_h) require_law(law = Law::additive, " (it uses h)");
    if (custom->with_v) require_law(law = Law::multiplicative, " (it uses v)");
    backend = law == Law::additive ? Backend::additive(custom->with_h) : Backend::multiplicative(custom->with_v);
  } else {
    throw ConfigError("unknown family '" + fam + "' (x | y | t | tau | su | custom:FILE)");
  }

  try {
    s.ring = std::make_shared<const Ring>(s.datum, backend);
  } catch (const AlgebraError& e) {
    throw ConfigError(e.what());
  }

  std::optional<OperatorFamily> family;
  try {
    if (fam == "x") family = OperatorFamily::X(s.ring);
    else if (fam == "y") family = OperatorFamily::Y(s.ring);
    else if (fam == "t") family = OperatorFamily::T(s.ring);
    else if (fam == "tau") family = OperatorFamily::tau_minus(s.ring);
    else if (fam == "su") family = OperatorFamily::su(s.ring);
    else {
      std::vector<QElem> a, b;
      for (const auto& e : custom->a) a.push_back(parse_expression(*s.ring, e));
      for (const auto& e : custom->b) b.push_back(parse_expression(*s.ring, e));
      family = OperatorFamily::custom(s.ring, a, b, custom->name);
    }
  } catch (const AlgebraError& e) {
    throw ConfigError(std::string("cannot build family: ") + e.what());
  }

  auto words = choose_words(c, *s.datum, s.parabolic);
  try {
    s.basis = std::make_unique<BasisChange>(std::move(*family), std::move(words));
  } catch (const AlgebraError& e) {
    throw ConfigError(std::string("cannot build basis: ") + e.what());
  }
  return s;
}

}  // namespace demazure
