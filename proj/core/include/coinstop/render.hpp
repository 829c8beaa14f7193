#pragma once

#include <string>

#include "coinstop/rational.hpp"

namespace coinstop {

/// Renders `x` with exactly `significant_digits` significant digits, rounding
/// half to even on the exact value. Positional notation is used for decimal
/// exponents in [-5, digits); scientific ("1.25e-7") otherwise. Trailing
/// zeros are kept, so 1467.22992 at 10 digits prints as "1467.229920".
/// Exact integers with at most `significant_digits` digits print as is.
std::string to_decimal(const Rational& x, int significant_digits = 10);

}  // namespace coinstop
