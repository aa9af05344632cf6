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

#pragma once

// Special functions used by the closed-form CCDFs. All results are
// accurate to roughly 1e-12 relative over the arguments the library uses.

namespace rogue::special {

/// Regularized lower incomplete gamma P(s, x) for s > 0, x >= 0.
double gamma_p(double s, double x);

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x).
double gamma_q(double s, double x);

/// log Q(s, x), finite for arguments where Q itself underflows.
double log_gamma_q(double s, double x);

/// Complementary error function via Q(1/2, z^2) for z >= 0.
double erfc(double z);

/// log erfc(z), finite for arbitrarily large z >= 0.
double log_erfc(double z);

/// Rising factorial s (s+1) ... (s+k-1).
double rising_factorial(double s, int k);

/// Double factorial (2m-1)!! as a double.
double odd_double_factorial(int m);

}  // namespace rogue::special
