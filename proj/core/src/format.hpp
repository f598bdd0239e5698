#pragma once

#include <sstream>
#include <string>

namespace singosc::detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace singosc::detail
