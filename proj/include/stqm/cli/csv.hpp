#pragma once

#include <string>

namespace stqm::cli {

// Shortest round-trip decimal representation, locale-independent.
std::string format_number(double v);
std::string format_number(long long v);

}  // namespace stqm::cli
