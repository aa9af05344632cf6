// Copyright 2026 The Rogue Authors
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

#include "rogue/special.hpp"

#include <cmath>
#include <limits>

#include "rogue/error.hpp"

namespace rogue::special {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// Series for P(s, x); returns log of the prefactor-free sum so the caller
// can combine in log space.
double log_series_p(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  double ap = s;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return std::log(sum) - x + s * std::log(x) - std::lgamma(s);
}

// Modified Lentz evaluation of the continued fraction for Q(s, x), x > s+1.
double log_continued_fraction_q(double s, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::log(h) - x + s * std::log(x) - std::lgamma(s);
}

void check_args(double s, double x) {
  require(s > 0.0 && std::isfinite(s), ErrorKind::validation,
          "incomplete gamma: shape must be positive and finite");
  require(x >= 0.0, ErrorKind::validation,
          "incomplete gamma: argument must be nonnegative");
}

}  // namespace

double gamma_p(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < s + 1.0) return std::exp(log_series_p(s, x));
  return -std::expm1(log_continued_fraction_q(s, x));
}

double gamma_q(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < s + 1.0) return -std::expm1(log_series_p(s, x));
  return std::exp(log_continued_fraction_q(s, x));
}

double log_gamma_q(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  if (x < s + 1.0) return std::log1p(-std::exp(log_series_p(s, x)));
  return log_continued_fraction_q(s, x);
}

double erfc(double z) {
  require(z >= 0.0, ErrorKind::validation, "erfc: argument must be nonnegative");
  return gamma_q(0.5, z * z);
}

double log_erfc(double z) {
  require(z >= 0.0, ErrorKind::validation,
          "log_erfc: argument must be nonnegative");
  return log_gamma_q(0.5, z * z);
}

double rising_factorial(double s, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= s + j;
  return r;
}

double odd_double_factorial(int m) {
  double r = 1.0;
  for (int j = 2 * m - 1; j > 1; j -= 2) r *= j;
  return r;
}

}  // namespace rogue::special
