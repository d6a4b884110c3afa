#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "demazure/twisted.hpp"

namespace demazure {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything needed to build one basis: datum, backend, family, words.
//
// family: x | y | t | tau | su | custom:FILE
// words:  lexmin | jcompat:J | file:PATH   (J is a digit list such as "1" or "13")
//
// t and su imply the additive law with h, tau the multiplicative law with v.
// A custom family file is JSON:
//   {"name": "...", "with_h": false, "with_v": false, "a": [...], "b": [...]}
// with one expression per simple root in each of "a" and "b".
// A words file is a JSON array holding one reduced word per Weyl element.
// A Cartan file is JSON: either a matrix or {"label": "...", "cartan": matrix}.
struct SessionConfig {
  std::string type;
  std::string cartan_file;
  Lattice lattice = Lattice::simply_connected;
  Law law = Law::additive;
  bool law_given = false;  // false: the family picks the law
  std::string family = "x";
  std::string words = "lexmin";
  std::vector<std::string> word_overrides;  // reduced words replacing the policy's choice
};

struct Session {
  std::shared_ptr<const RootDatum> datum;
  std::shared_ptr<const Ring> ring;
  std::unique_ptr<BasisChange> basis;
  std::vector<int> parabolic;  // set by jcompat:J

  const OperatorFamily& family() const { return basis->family(); }
};

// Throws ConfigError for anything the user can fix.
Session open_session(const SessionConfig& config);

Lattice parse_lattice(const std::string& text);
Law parse_law(const std::string& text);
std::string lattice_name(Lattice lattice);

}  // namespace demazure
