#pragma once

#include "fairdiv/fairness.hpp"
#include "fairdiv/model.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace fairdiv {

using json = nlohmann::json;

// Rationals are written as strings ("3", "-1/2"); readers also accept JSON integers.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);
json value_to_json(const Value& v);

// Instance: {"agents": n, "items": [...], "utilities": [[...]], "forbidden": [[i, j], ...]}.
// A utility written as "-inf" marks that entry forbidden as well.
Instance instance_from_json(const json& j);
json to_json(const Instance& inst);

// Multigraph: {"vertices": n, "edges": [{"id": "e1", "a": 0, "b": 1, "wa": "-1", "wb": "-1"}]}.
Multigraph multigraph_from_json(const json& j);
json to_json(const Multigraph& g);

// Allocation: {"bundles": [["o1"], ["o2", "o3"]]}, optional "partial": true.
Allocation allocation_from_json(const json& j);
json to_json(const Allocation& a);

// Orientation: {"assign": {"e1": 0}}, optional "partial": true.
Orientation orientation_from_json(const json& j);
json to_json(const Orientation& o);

json to_json(const FairnessReport& r);

json read_json_file(const std::string& path);

}  // namespace fairdiv
