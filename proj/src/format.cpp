#include "dint/format.hpp"

#include <charconv>
#include <cmath>

namespace dint {

std::string format_sci(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 8);
  return std::string(buf, end);
}

std::string format_g(double v) {
  char buf[40];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, end);
}

}  // namespace dint
