#pragma once

#include <string>

#include "json.hpp"

namespace tempodeg {

/// Deterministic JSON text: object keys in sorted order, floating-point
/// numbers printed with 9 significant digits (exact for float32 values),
/// arrays of scalars kept on one line. Non-finite numbers become null.
std::string canonical_dump(const nlohmann::json& value, int indent = 2);

/// "%.9g" formatting used for every float in canonical output.
std::string format_float(double v);

}  // namespace tempodeg
