#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "demazure/golden.hpp"
#include "demazure/serialize.hpp"
#include "demazure/session.hpp"

#ifndef DEMAZURE_CORPUS_DIR
#define DEMAZURE_CORPUS_DIR "tests/data"
#endif

using namespace demazure;

namespace {

constexpr int kOk = 0;
constexpr int kDiscrepancy = 2;
constexpr int kConfigError = 3;

struct Common {
  SessionConfig config;
  std::string lattice = "sc";
  std::string fgl;
  std::string out = "text";
  bool check = false;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--type", c.config.type, "Cartan type such as A2, B3, G2");
  cmd->add_option("--cartan", c.config.cartan_file, "JSON file with a Cartan matrix");
  cmd->add_option("--lattice", c.lattice, "sc | adjoint")->capture_default_str();
  cmd->add_option("--fgl", c.fgl, "additive | multiplicative");
  cmd->add_option("--family", c.config.family, "x | y | t | tau | su | custom:FILE")->capture_default_str();
  cmd->add_option("--words", c.config.words, "lexmin | jcompat:J | file:PATH")->capture_default_str();
  cmd->add_option("--out", c.out, "text | json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

Session open(Common& c) {
  c.config.lattice = parse_lattice(c.lattice);
  if (!c.fgl.empty()) {
    c.config.law = parse_law(c.fgl);
    c.config.law_given = true;
  }
  return open_session(c.config);
}

WeylElement element(const RootDatum& d, const std::string& text) {
  try {
    return text.empty() || text == "e" ? d.identity() : d.parse_element(text);
  } catch (const RootDatumError& e) {
    throw ConfigError(e.what());
  }
}

std::string name(const Session& s, WeylElement w) {
  const std::string t = s.datum->format_word(s.basis->word(w));
  return t.empty() ? "e" : t;
}

void print_table(const Session& s, const StructureTable& t, bool json) {
  if (json) {
    std::cout << to_json(*s.ring, t).dump(2) << "\n";
    return;
  }
  for (const auto& e : t.entries)
    std::cout << name(s, e.u) << " * " << name(s, e.v) << " -> " << name(s, e.w) << " : "
              << s.ring->to_string(e.value) << "\n";
}

int print_report(const std::vector<CheckResult>& checks, bool json) {
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.passed;
  if (json) {
    std::cout << report_to_json(checks).dump(2) << "\n";
  } else {
    for (const auto& c : checks) {
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name;
      if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
      std::cout << "\n";
      for (const auto& d : c.discrepancies)
        std::cout << "      " << d.location << "\n        formula: " << d.formula << "\n        oracle:  " << d.oracle
                  << "\n";
    }
  }
  return ok ? kOk : kDiscrepancy;
}

int cmd_mult(Common& c, const std::optional<std::string>& u, const std::optional<std::string>& v) {
  Session s = open(c);
  std::optional<WeylElement> ou, ov;
  if (u) ou = element(*s.datum, *u);
  if (v) ov = element(*s.datum, *v);
  const StructureTable table = build_table(*s.basis, Provenance::formula, c.jobs, ou, ov);
  const bool json = c.out == "json";
  if (!c.check) {
    print_table(s, table, json);
    return kOk;
  }
  const StructureTable oracle = build_table(*s.basis, Provenance::oracle, c.jobs, ou, ov);
  CheckResult r{"structure constants: formula = oracle", true, std::to_string(table.entries.size()) + " constants", {}};
  std::map<std::tuple<int, int, int>, const QElem*> fm, om;
  for (const auto& e : table.entries) fm[{e.u.id, e.v.id, e.w.id}] = &e.value;
  for (const auto& e : oracle.entries) om[{e.u.id, e.v.id, e.w.id}] = &e.value;
  std::set<std::tuple<int, int, int>> keys;
  for (auto& [k, _] : fm) keys.insert(k);
  for (auto& [k, _] : om) keys.insert(k);
  for (const auto& k : keys) {
    auto fi = fm.find(k), oi = om.find(k);
    const QElem f = fi == fm.end() ? s.ring->zero() : *fi->second;
    const QElem o = oi == om.end() ? s.ring->zero() : *oi->second;
    if (!(f == o)) {
      auto [a, b, w] = k;
      r.fail("u=" + name(s, {a}) + " v=" + name(s, {b}) + " w=" + name(s, {w}), s.ring->to_string(f),
             s.ring->to_string(o));
    }
  }
  if (json) {
    Json out{{"table", to_json(*s.ring, table)}, {"report", report_to_json({r})}};
    std::cout << out.dump(2) << "\n";
    return r.passed ? kOk : kDiscrepancy;
  }
  print_table(s, table, false);
  return print_report({r}, false);
}

int cmd_restrict(Common& c, const std::string& w, const std::string& v) {
  Session s = open(c);
  const WeylElement ew = element(*s.datum, w), ev = element(*s.datum, v);
  const QElem& b = s.basis->b(ev, ew);
  if (c.out == "json") {
    Json out{{"w", s.datum->format_word(s.basis->word(ew))},
             {"v", s.datum->format_word(s.basis->word(ev))},
             {"family", s.family().name()},
             {"backend", s.ring->backend().name()},
             {"value", to_json(*s.ring, b)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << s.ring->to_string(b) << "\n";
  }
  return kOk;
}

int cmd_stab(Common& c, const std::string& variant, const std::optional<std::string>& u,
             const std::optional<std::string>& v) {
  if (variant == "coh") {
    if (c.config.family == "x") c.config.family = "t";
    if (c.config.family != "t") throw ConfigError("stab coh uses the family t");
  } else {
    if (c.config.family == "x") c.config.family = "tau";
    if (c.config.family != "tau") throw ConfigError("stab k uses the family tau");
  }
  Session s = open(c);
  std::optional<WeylElement> ou, ov;
  if (u) ou = element(*s.datum, *u);
  if (v) ov = element(*s.datum, *v);
  StableConstants stable(*s.basis);
  const RootDatum& d = *s.datum;
  StructureTable table;
  table.family = s.family().name();
  table.backend = s.ring->backend().name();
  table.datum = d.label();
  table.words = s.basis->words();
  table.provenance = Provenance::oracle;
  for (auto a : d.weyl_elements()) {
    if (ou && *ou != a) continue;
    for (auto b : d.weyl_elements()) {
      if (ov && *ov != b) continue;
      const auto row = stable.oracle(a, b);
      for (auto w : d.weyl_elements())
        if (!row[w.id].is_zero()) table.entries.push_back({a, b, w, row[w.id]});
    }
  }
  const bool json = c.out == "json";
  if (!c.check) {
    print_table(s, table, json);
    return kOk;
  }
  const CheckResult r = stable.compare(ou, ov);
  if (json) {
    Json out{{"table", to_json(*s.ring, table)}, {"report", report_to_json({r})}};
    std::cout << out.dump(2) << "\n";
    return r.passed ? kOk : kDiscrepancy;
  }
  print_table(s, table, false);
  return print_report({r}, false);
}

std::vector<CheckResult> property_suite(const Session& s, const std::string& suite, int jobs, int max_len) {
  std::vector<CheckResult> out;
  const OperatorFamily& f = s.family();
  const bool all = suite == "all";
  if (all || suite == "relations") out.push_back(check_relations(f));
  if (all || suite == "leibniz") {
    out.push_back(check_leibniz_rule(f, max_len, 10, 2024));
    out.push_back(check_billey(f, max_len + 1));
  }
  if (all || suite == "duality") {
    out.push_back(check_duality(*s.basis));
    out.push_back(check_round_trip(*s.basis));
    out.push_back(check_c_support(*s.basis, 4));
    out.push_back(check_formula_vs_oracle(*s.basis, jobs));
    out.push_back(check_restriction_matrices(*s.basis));
    out.push_back(check_restriction_independence(f));
    if (f.kind() == FamilyKind::T) out.push_back(check_coh_stable_basis(f));
    if (f.kind() == FamilyKind::tau_minus) out.push_back(check_k_stable_basis(f));
    if ((f.kind() == FamilyKind::X || f.kind() == FamilyKind::Y) && s.ring->backend() == Backend::additive())
      out.push_back(check_sign_bridge(s.ring));
    if (!s.parabolic.empty() && (f.kind() == FamilyKind::X || f.kind() == FamilyKind::Y))
      out.push_back(check_parabolic(s.ring, f.kind(), s.parabolic));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure constants of dual Demazure-type classes over a root datum"};
  app.require_subcommand(1);

  Common common;
  std::optional<std::string> u, v;
  std::string w_arg, v_arg, variant, suite = "all", corpus = DEMAZURE_CORPUS_DIR;
  int max_len = 5;

  auto* mult = app.add_subcommand("mult", "structure constants of Z*_u Z*_v");
  add_common(mult, common);
  mult->add_option("--u", u, "reduced word of u (\"\" for e)");
  mult->add_option("--v", v, "reduced word of v (\"\" for e)");
  mult->add_flag("--check", common.check, "also run the oracle and report discrepancies");

  auto* restrict = app.add_subcommand("restrict", "restriction coefficient b_{v,I_w}");
  add_common(restrict, common);
  restrict->add_option("--w", w_arg, "reduced word of w")->required();
  restrict->add_option("--v", v_arg, "reduced word of the fixed point v")->required();

  auto* stab = app.add_subcommand("stab", "stable-basis structure constants (oracle route)");
  add_common(stab, common);
  stab->add_option("variant", variant, "coh | k")->required()->check(CLI::IsMember({"coh", "k"}));
  stab->add_option("--u", u, "reduced word of u");
  stab->add_option("--v", v, "reduced word of v");
  stab->add_flag("--check", common.check, "compare with the subset formula and report discrepancies");

  auto* verify = app.add_subcommand("verify", "run property suites and the example corpus");
  add_common(verify, common);
  verify->add_option("--suite", suite, "relations | leibniz | duality | paper-examples | all")
      ->check(CLI::IsMember({"relations", "leibniz", "duality", "paper-examples", "all"}))
      ->capture_default_str();
  verify->add_option("--corpus", corpus, "directory of example files")->capture_default_str();
  verify->add_option("--max-len", max_len, "longest word for the Leibniz suite")->capture_default_str();
  verify->add_flag("--check", common.check, "accepted for symmetry; verify always checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*mult) return cmd_mult(common, u, v);
    if (*restrict) return cmd_restrict(common, w_arg, v_arg);
    if (*stab) return cmd_stab(common, variant, u, v);
    std::vector<CheckResult> checks;
    if (suite != "paper-examples") {
      if (common.config.type.empty() && common.config.cartan_file.empty()) common.config.type = "A2";
      Session s = open(common);
      checks = property_suite(s, suite, common.jobs, max_len);
    }
    if (suite == "paper-examples" || suite == "all") {
      GoldenFilter filter;
      if (!common.config.type.empty()) filter.type = common.config.type;
      auto golden = run_golden_corpus(corpus, filter);
      checks.insert(checks.end(), golden.begin(), golden.end());
    }
    return print_report(checks, common.out == "json");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const RootDatumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
