#pragma once

#include <cstdio>
#include <string>

#include "ifslab/space.hpp"

namespace ifslab::detail {

inline std::string num(double v, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::string point_str(const Point& p) {
  if (p.at_infinity) return "inf";
  return "(" + num(p.x, 12) + ", " + num(p.y, 12) + ")";
}

}  // namespace ifslab::detail
