#include "habcert/numeric.hpp"

namespace habcert {

const char* to_string(PrecisionMode m) { return m == PrecisionMode::Extended ? "extended" : "standard"; }

}  // namespace habcert
