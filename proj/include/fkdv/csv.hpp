#pragma once

#include <string>

namespace fkdv {

// Shortest decimal form that round-trips to the same double.
std::string format_number(double value);

}  // namespace fkdv
