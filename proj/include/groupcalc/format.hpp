#pragma once

#include <string>

namespace groupcalc {

/// Shortest decimal string that round-trips to the same double.
std::string shortest_repr(double x);

/// Fixed 12-significant-digit rendering used for every CSV and CLI value.
std::string format12(double x);

}  // namespace groupcalc
