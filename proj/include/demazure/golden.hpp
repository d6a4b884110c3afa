#pragma once

#include <optional>
#include <string>
#include <vector>

#include "demazure/verify.hpp"

namespace demazure {

// A corpus file is JSON:
//
//   {"description": "...",
//    "cases": [{"type": "A2", "lattice": "sc", "fgl": "additive", "family": "x",
//               "words": ["12312"],            // optional reduced-word overrides
//               "entries": [...]}]}
//
// Entry kinds:
//   {"kind": "product", "u", "v", "expansion": {"w": "expr", ...}}
//       the full row of Z*_u Z*_v (absent w mean 0), by formula and oracle
//   {"kind": "constant", "u", "v", "w", "expected"}   formula and oracle
//   {"kind": "restriction", "w", "v", "expected"}      b_{v, I_w}
//   {"kind": "stable", "u", "v", "w", "expected"}      stable-basis constant by
//       the oracle route (family t or tau)
// Every entry carries a "source" string; "note" is free text. Expressions use
// the parse_expression grammar.
struct GoldenFilter {
  std::optional<std::string> type;    // only cases on this datum
  std::optional<std::string> family;  // only cases with this family
  std::optional<std::string> fgl;     // only cases with this law
};

// One CheckResult per case.
std::vector<CheckResult> run_golden_file(const std::string& path, const GoldenFilter& filter = {});
// Every *.json file in `dir`, in name order.
std::vector<CheckResult> run_golden_corpus(const std::string& dir, const GoldenFilter& filter = {});

}  // namespace demazure
