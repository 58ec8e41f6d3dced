#pragma once

#include <string>

#include "habcert/family.hpp"

namespace habcert {

/// Function-definition files. The role is not stored; the caller supplies it
/// (a verification run takes it from the conjecture).
///
///   {"scale": "6", "power": 2,
///    "knot": {"defining_poly": ["-3","0","0","0","5"], "bracket": ["0","1"]},
///    "normalization": "TAU", "perturbation": ["0","0","2","-8","7"], "epsilon": "1"}
///
/// "epsilon" may be omitted when an override is given.
FamilyFunction parse_definition(const std::string& json_text, Role role, const std::optional<Rational>& epsilon = {});
FamilyFunction load_definition(const std::string& path, Role role, const std::optional<Rational>& epsilon = {});
std::string write_definition(const FamilyFunction& f);

}  // namespace habcert
