#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "galcoh/gmodules.hpp"
#include "galcoh/groups.hpp"
#include "galcoh/real_galois.hpp"

namespace galcoh {

/// Named group definitions. A group document looks like
///
///   {"groups": {
///      "gal":  {"kind": "cyclic", "order": 2},
///      "pi1":  {"kind": "abelian", "factors": [2, 4, 4]},
///      "v4":   {"kind": "product", "left": "gal", "right": "gal"},
///      "d8":   {"kind": "d8"},
///      "dih":  {"kind": "semidirect", "normal": "z4", "quotient": "gal", "action": [[3]]},
///      "tab":  {"kind": "cayley", "order": 2, "table": [[0,1],[1,0]], "generators": [1]}}}
///
/// Definitions may refer to groups defined earlier in the same document.
/// For "semidirect", action[i] lists the images of the normal subgroup's
/// generators under the i-th generator of the quotient.
using GroupLibrary = std::map<std::string, GroupPtr>;

GroupLibrary parse_group_config(const nlohmann::json& doc, const std::string& source);
GroupLibrary load_group_config(const std::string& path);

/// {"group": "pi1", "factors": [4], "action": [[[3]], [[1]], [[1]]]}
/// with one matrix per group generator, or "action": "trivial".
ModulePtr parse_module_config(const nlohmann::json& doc, const GroupLibrary& groups, const std::string& source);
ModulePtr load_module_config(const std::string& path, const GroupLibrary& groups);

/// {"places": [{"name": "real", "group": [2, 2], "delta_image": [[0,0], [1,0], [0,1]]},
///             {"name": "real2", "sign_sequences": {"n": 3, "m": 2, "delta": [[1,1,1], [1,-1,-1]]}}],
///  "sha_image": [[0,0,0,0]]}
ConditionInput parse_condition_input(const nlohmann::json& doc, const std::string& source);
ConditionInput load_condition_input(const std::string& path);
nlohmann::json condition_input_to_json(const ConditionInput& in);

/// Reads and parses a JSON file; errors carry the path.
nlohmann::json read_json_file(const std::string& path);

} // namespace galcoh
