/*
 * Copyright 2026 the eqdesign authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EQDESIGN_RATIONAL_HPP
#define EQDESIGN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace eqdesign {

// All payoff and punishment arithmetic is exact.  cpp_rational keeps values
// in lowest terms with a positive denominator, which is exactly the
// representation the rest of the code relies on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/** Renders "p/q", or just "p" when the value is an integer. */
inline std::string rational_to_string(const Rational& r) {
    Int num = numerator(r);
    Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/** Floor of a rational as an exact integer. */
inline Int rational_floor(const Rational& r) {
    Int num = numerator(r);
    Int den = denominator(r);
    Int q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

/** Ceiling of a rational as an exact integer. */
inline Int rational_ceil(const Rational& r) {
    return -rational_floor(-r);
}

/** Nearest integer; half-way cases round up. */
inline Int rational_round(const Rational& r) {
    return rational_floor(r + Rational(1, 2));
}

} // namespace eqdesign

#endif
