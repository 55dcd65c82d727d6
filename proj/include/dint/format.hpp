#pragma once

#include <string>

namespace dint {

/// Scientific notation with 9 significant digits ("%.8e"), locale
/// independent. NaN prints as "nan".
std::string format_sci(double v);

/// Shortest-ish "%.6g" rendering for messages.
std::string format_g(double v);

}  // namespace dint
