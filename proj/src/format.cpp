#include "groupcalc/format.hpp"

#include <charconv>
#include <cstdio>

namespace groupcalc {

std::string shortest_repr(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format12(double x) {
  if (x == 0.0) return "0";  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace groupcalc
