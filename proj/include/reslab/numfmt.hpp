#pragma once

#include <string>

namespace reslab {

// Fixed significant-digit formatting for emitted tables. Infinities render as
// "inf"/"-inf" and NaN as "nan" so output files parse the same on every libc.
std::string format_sig(double value, int significant_digits = 12);

}  // namespace reslab
