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

#include "attrib/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace attrib {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

// round(p/q) for q > 0, half away from zero.
mpz_class round_quotient(const mpz_class& p, const mpz_class& q) {
  mpz_class num = 2 * p + (p >= 0 ? q : -q);
  mpz_class den = 2 * q;
  mpz_class out;
  mpz_tdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

mpz_class pow10(int k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return out;
}

}  // namespace

rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad_number(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad_number(text);

  rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    value = rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ipart = s.substr(0, dot);
    std::string_view fpart = s.substr(dot + 1);
    if (ipart.empty() && fpart.empty()) bad_number(text);
    if (!ipart.empty() && !all_digits(ipart)) bad_number(text);
    if (!fpart.empty() && !all_digits(fpart)) bad_number(text);
    mpz_class scale = pow10(static_cast<int>(fpart.size()));
    mpz_class whole = ipart.empty() ? mpz_class(0) : mpz_class(std::string(ipart), 10);
    mpz_class frac = fpart.empty() ? mpz_class(0) : mpz_class(std::string(fpart), 10);
    value = rational(whole * scale + frac, scale);
  } else {
    if (!all_digits(s)) bad_number(text);
    value = rational(mpz_class(std::string(s), 10));
  }
  value.canonicalize();
  return negative ? rational(-value) : value;
}

std::string to_fraction_string(const rational& value) {
  rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

// Renders |num/den| rounded to `sig` significant digits; e is the decimal
// exponent: the value lies in [10^(e-1), 10^e).
std::string render_positive(const mpz_class& num, const mpz_class& den, int sig) {
  auto less_than_pow = [&](int k) {
    // num/den < 10^k
    if (k >= 0) return num < den * pow10(k);
    return num * pow10(-k) < den;
  };
  // Estimate from digit counts, then adjust with exact comparisons until
  // 10^(e-1) <= num/den < 10^e.
  int e = static_cast<int>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
          static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 10));
  while (!less_than_pow(e)) ++e;
  while (less_than_pow(e - 1)) --e;

  int shift = sig - e;
  mpz_class mantissa = shift >= 0 ? round_quotient(num * pow10(shift), den)
                                  : round_quotient(num, den * pow10(-shift));
  if (mantissa == pow10(sig)) {  // rounding bumped into the next decade
    mantissa = pow10(sig - 1);
    ++e;
  }
  std::string digits = mantissa.get_str();

  std::string out;
  if (e <= 0) {
    out = "0.";
    out.append(static_cast<size_t>(-e), '0');
    out += digits;
  } else if (e >= static_cast<int>(digits.size())) {
    out = digits;
    out.append(static_cast<size_t>(e) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<size_t>(e)) + "." + digits.substr(static_cast<size_t>(e));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

}  // namespace

std::string to_decimal_string(const rational& value, int significant_digits) {
  if (significant_digits < 1) throw std::invalid_argument("significant_digits must be >= 1");
  rational v = value;
  v.canonicalize();
  if (v == 0) return "0";
  mpz_class num = abs(v.get_num());
  mpz_class den = v.get_den();
  std::string body = render_positive(num, den, significant_digits);
  return v < 0 ? "-" + body : body;
}

std::string to_fixed_string(const rational& value, int decimal_places) {
  if (decimal_places < 0) throw std::invalid_argument("decimal_places must be >= 0");
  rational v = value;
  v.canonicalize();
  bool negative = v < 0;
  mpz_class num = abs(v.get_num());
  mpz_class den = v.get_den();
  mpz_class scaled = round_quotient(num * pow10(decimal_places), den);
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= decimal_places) {
    digits.insert(0, static_cast<size_t>(decimal_places) + 1 - digits.size(), '0');
  }
  std::string out = negative && scaled != 0 ? "-" : "";
  if (decimal_places == 0) return out + digits;
  out += digits.substr(0, digits.size() - static_cast<size_t>(decimal_places));
  out += ".";
  out += digits.substr(digits.size() - static_cast<size_t>(decimal_places));
  return out;
}

}  // namespace attrib
