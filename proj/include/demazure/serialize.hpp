#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "demazure/verify.hpp"

namespace demazure {

using Json = nlohmann::ordered_json;

// {"num": "<polynomial>", "den": [{"kind": "x"|"hat", "root": "a1+a2", "power": 1}, ...]}
Json to_json(const Ring& ring, const QElem& q);
QElem qelem_from_json(const Ring& ring, const Json& j);

// Array of {"u", "v", "w", "family", "backend", "value"} records; Weyl
// elements are written as reduced words in the table's word choice, "" for e.
Json to_json(const Ring& ring, const StructureTable& table);
// Reads records back; u, v, w are parsed as reduced words of the datum.
StructureTable table_from_json(const Ring& ring, const Json& j);

// {"passed": bool, "checks": [{"name", "passed", "detail", "discrepancies": [{location, formula, oracle}]}]}
Json report_to_json(const std::vector<CheckResult>& checks);

}  // namespace demazure
