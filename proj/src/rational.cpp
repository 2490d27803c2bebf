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

#include "repart/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace repart {

long long rational_floor(const Rational &r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0)
        --q;
    return q;
}

namespace {

Rational pow10_rational(int exp) {
    Rational r(1);
    for (int i = 0; i < std::abs(exp); ++i)
        r *= Rational(10);
    return exp >= 0 ? r : Rational(1) / r;
}

} // namespace

Rational parse_rational(const std::string &text) {
    std::string s = text;
    // trim
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos)
        throw std::invalid_argument("empty rational literal");
    s = s.substr(b, e - b + 1);

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == Rational(0))
            throw std::invalid_argument("zero denominator in '" + text + "'");
        return num / den;
    }

    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    long long int_part = 0;
    long long frac_part = 0;
    int frac_digits = 0;
    int exponent = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        int_part = int_part * 10 + (s[i] - '0');
        any_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            frac_part = frac_part * 10 + (s[i] - '0');
            ++frac_digits;
            any_digit = true;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = (s[i] == '-');
            ++i;
        }
        bool edigit = false;
        int ev = 0;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            ev = ev * 10 + (s[i] - '0');
            edigit = true;
        }
        if (!edigit)
            throw std::invalid_argument("malformed exponent in '" + text + "'");
        exponent = eneg ? -ev : ev;
    }
    if (!any_digit || i != s.size())
        throw std::invalid_argument("malformed rational literal '" + text + "'");

    Rational r(int_part);
    if (frac_digits > 0)
        r += Rational(frac_part) / pow10_rational(frac_digits);
    if (exponent != 0)
        r *= pow10_rational(exponent);
    return neg ? -r : r;
}

std::string format_rational(const Rational &r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1)
        os << '/' << r.denominator();
    return os.str();
}

std::string format_decimal(const Rational &r, bool *exact) {
    long long den = r.denominator();
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den == 1) {
        if (exact)
            *exact = true;
        if (r.denominator() == 1) {
            std::ostringstream os;
            os << r.numerator();
            return os.str();
        }
        // scale to 10^k to read the digits off directly
        int k = std::max(twos, fives);
        Rational scaled = r * pow10_rational(k);
        long long mag = scaled.numerator() < 0 ? -scaled.numerator() : scaled.numerator();
        std::ostringstream digits;
        digits << mag;
        std::string d = digits.str();
        while (static_cast<int>(d.size()) <= k)
            d = "0" + d;
        d.insert(d.size() - k, ".");
        if (r < Rational(0))
            d = "-" + d;
        return d;
    }
    if (exact)
        *exact = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", to_double(r));
    return buf;
}

} // namespace repart
