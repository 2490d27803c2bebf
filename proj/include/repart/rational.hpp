/*
Copyright 2026 the repart authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace repart {

/// Exact rational number used for all weights, costs and bounds.
/// Costs are compared exactly; floating point appears only in reports.
using Rational = boost::rational<long long>;

inline double to_double(const Rational &r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Largest integer <= r.
long long rational_floor(const Rational &r);

/// Parses "3", "-3", "3/4", "2.5" or "1.25e2" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string &text);

/// "a/b", or just "a" when the denominator is 1.
std::string format_rational(const Rational &r);

/// Decimal rendering: exact when the denominator is of the form 2^a*5^b,
/// otherwise 17 significant digits. `exact` (if non-null) reports which case hit.
std::string format_decimal(const Rational &r, bool *exact = nullptr);

} // namespace repart
