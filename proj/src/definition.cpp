#include "habcert/definition.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "habcert/error.hpp"

namespace habcert {

namespace {

using json = nlohmann::ordered_json;

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorKind::Parse, std::string("definition is missing field '") + name + "'");
  return *it;
}

Rational rational_field(const json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorKind::Parse, std::string(what) + " must be a rational string \"p/q\"");
  return parse_rational(j.get<std::string>());
}

RationalPolynomial polynomial_field(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, std::string(what) + " must be an array of rational strings");
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_field(e, what));
  return RationalPolynomial(std::move(c));
}

json polynomial_json(const RationalPolynomial& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  if (a.empty()) a.push_back("0");
  return a;
}

}  // namespace

FamilyFunction parse_definition(const std::string& text, Role role, const std::optional<Rational>& epsilon) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("definition is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "definition must be a JSON object");
  const Rational scale = rational_field(field(j, "scale"), "scale");
  const json& pj = field(j, "power");
  if (!pj.is_number_unsigned()) throw Error(ErrorKind::Parse, "power must be a nonnegative integer");
  const unsigned power = pj.get<unsigned>();
  const json& kj = field(j, "knot");
  if (!kj.is_object()) throw Error(ErrorKind::Parse, "knot must be an object");
  const RationalPolynomial defining = polynomial_field(field(kj, "defining_poly"), "knot.defining_poly");
  const json& bj = field(kj, "bracket");
  if (!bj.is_array() || bj.size() != 2) throw Error(ErrorKind::Parse, "knot.bracket must hold two rational strings");
  const Rational lo = rational_field(bj[0], "knot.bracket"), hi = rational_field(bj[1], "knot.bracket");
  const json& nj = field(j, "normalization");
  if (!nj.is_string()) throw Error(ErrorKind::Parse, "normalization must be \"TAU\" or \"THETA\"");
  const Normalization norm = parse_normalization(nj.get<std::string>());
  const RationalPolynomial pert = polynomial_field(field(j, "perturbation"), "perturbation");
  Rational eps;
  if (epsilon) eps = *epsilon;
  else eps = rational_field(field(j, "epsilon"), "epsilon");
  return FamilyFunction(role, scale, power, make_constant(defining, lo, hi), norm, pert, eps);
}

FamilyFunction load_definition(const std::string& path, Role role, const std::optional<Rational>& epsilon) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read definition file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_definition(ss.str(), role, epsilon);
}

std::string write_definition(const FamilyFunction& f) {
  json j;
  j["scale"] = to_string(f.scale());
  j["power"] = f.power();
  j["knot"] = {{"defining_poly", polynomial_json(f.knot().defining_polynomial())},
               {"bracket", {to_string(f.knot().bracket_lo()), to_string(f.knot().bracket_hi())}}};
  j["normalization"] = to_string(f.normalization());
  j["perturbation"] = polynomial_json(f.perturbation());
  j["epsilon"] = to_string(f.epsilon());
  return j.dump(2) + "\n";
}

}  // namespace habcert
