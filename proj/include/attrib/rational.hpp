// Copyright 2026 The Attribeo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ATTRIB_RATIONAL_HPP
#define ATTRIB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace attrib {

/// All benefit values, payoffs and claims are exact rationals. Decimal
/// inputs convert exactly ("0.1" becomes 1/10), so results like 160/3
/// survive every computation bit for bit.
using rational = mpq_class;

/// Parses "12", "3/4", "0.25" or "-1.5" into an exact rational.
/// Throws std::invalid_argument on anything else.
rational parse_rational(std::string_view text);

/// Lowest-terms rendering: "160/3"; integers print without a denominator.
std::string to_fraction_string(const rational& value);

/// Rounds to the given number of significant digits, half away from zero.
/// Trailing fractional zeros are stripped: 160/3 at 6 digits is "53.3333",
/// an exact 100 is "100".
std::string to_decimal_string(const rational& value, int significant_digits);

/// Fixed-point rendering with exactly `decimal_places` digits after the
/// point, half away from zero: 160/3 at 6 places is "53.333333".
std::string to_fixed_string(const rational& value, int decimal_places);

}  // namespace attrib

#endif  // ATTRIB_RATIONAL_HPP
