#pragma once

#include "gpa/rep.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace gpa {

// A module file holds either a rational or an F_p representation.
struct ModuleFile {
    std::optional<Rep<Rational>> q;
    std::optional<Rep<Fp>> fp;
    std::uint64_t p = 0;
};

nlohmann::json rep_to_json(const Rep<Rational>& M);
nlohmann::json rep_to_json(const Rep<Fp>& M);  // records the current modulus

// Accepts the matrix format and the labeled-basis format
// {"basis":[vertex,...], "actions":[[arrow, from, to, scalar],...]}.
// Relations are checked; violations raise RelationFailure.
ModuleFile parse_module_json(const DatumPtr& d, const nlohmann::json& j);
ModuleFile read_module_file(const DatumPtr& d, const std::string& path);

}  // namespace gpa
