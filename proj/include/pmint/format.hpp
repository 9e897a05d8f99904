#pragma once

#include <cstdio>
#include <string>

namespace pmint {

// Fixed 9-significant-digit scientific formatting, used for every float the
// library writes; keeps output files byte-identical across runs and platforms.
inline std::string format_sig9(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

}  // namespace pmint
