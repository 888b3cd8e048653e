/*
   Copyright 2026 The ruinkit Authors

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

#include <functional>

namespace ruinkit {

using ScalarFunction = std::function<double(double)>;

/// Convergence controls shared by the root finder and the quadratures.
///
/// `max_iter` bounds root-finder iterations and, for the quadratures, the
/// number of interval bisections.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;

    /// Throws InvalidArgument unless abs_tol > 0, rel_tol >= 0, max_iter >= 1.
    void validate() const;
};

/// Final bracket around a root; `root` lies in [lo, hi].
struct RootBracket {
    double root;
    double lo;
    double hi;
    int iterations;
};

/// Bracketed root of `f` on [lo, hi].
///
/// Requires f(lo) * f(hi) < 0 (or an exact zero at an endpoint). Iterates
/// until the bracket is narrower than abs_tol + rel_tol * |x| or f vanishes
/// exactly. Throws NoSignChange or MaxIterExceeded.
RootBracket find_root_bracketed(const ScalarFunction& f, double lo, double hi,
                                const Tolerance& tol = {});

/// Adaptive Gauss-Kronrod (7/15) quadrature of `f` over [a, b].
///
/// Global bisection of the worst interval until the summed error estimate is
/// below abs_tol + rel_tol * |I|. Throws MaxIterExceeded when the subdivision
/// budget runs out first.
double integrate_finite(const ScalarFunction& f, double a, double b, const Tolerance& tol = {});

/// Integral of `f` over [a, inf).
///
/// Maps [a, inf) onto [0, 1) with z = a + t / (1 - t) and applies the
/// finite-interval rule. Before integrating, |f(z)| * (z - a + 1) is probed
/// at geometrically spaced points; if it does not decay the integrand is
/// rejected with Divergent. The probe is a heuristic, not a proof.
double integrate_semi_infinite(const ScalarFunction& f, double a, const Tolerance& tol = {});

}  // namespace ruinkit
