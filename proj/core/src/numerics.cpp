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

#include "ruinkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "ruinkit/error.hpp"

namespace ruinkit {

void Tolerance::validate() const {
    if (!(abs_tol > 0.0)) throw InvalidArgument("Tolerance: abs_tol must be > 0");
    if (!(rel_tol >= 0.0)) throw InvalidArgument("Tolerance: rel_tol must be >= 0");
    if (max_iter < 1) throw InvalidArgument("Tolerance: max_iter must be >= 1");
}

RootBracket find_root_bracketed(const ScalarFunction& f, double lo, double hi, const Tolerance& tol) {
    tol.validate();
    if (!(lo <= hi)) throw InvalidArgument("find_root_bracketed: need lo <= hi");

    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, lo, lo, 0};
    if (f_hi == 0.0) return {hi, hi, hi, 0};
    if (!(f_lo * f_hi < 0.0)) {
        throw NoSignChange("find_root_bracketed: f(lo) and f(hi) have the same sign on [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }

    const auto narrow_enough = [&tol](double a, double b) {
        return std::abs(b - a) <= tol.abs_tol + tol.rel_tol * std::min(std::abs(a), std::abs(b));
    };

    std::uintmax_t iterations = static_cast<std::uintmax_t>(tol.max_iter);
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, narrow_enough, iterations);

    const double mid = 0.5 * (a + b);
    if (!narrow_enough(a, b) && f(mid) != 0.0) {
        throw MaxIterExceeded("find_root_bracketed: bracket still " + std::to_string(b - a) +
                              " wide after " + std::to_string(tol.max_iter) + " iterations");
    }
    return {mid, a, b, static_cast<int>(iterations)};
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

// Single 7/15-point Gauss-Kronrod panel. Kronrod abscissae at even indices
// coincide with the Gauss nodes.
Panel gauss_kronrod_panel(const ScalarFunction& f, double a, double b) {
    const auto& nodes = Kronrod::abscissa();
    const auto& k_weights = Kronrod::weights();
    const auto& g_weights = Gauss::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_center = f(center);
    double kronrod = f_center * k_weights[0];
    double gauss = f_center * g_weights[0];
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double dx = half * nodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += pair * k_weights[i];
        if (i % 2 == 0) gauss += pair * g_weights[i / 2];
    }
    kronrod *= half;
    gauss *= half;

    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod);
    return {a, b, kronrod, std::max(std::abs(kronrod - gauss), roundoff)};
}

}  // namespace

double integrate_finite(const ScalarFunction& f, double a, double b, const Tolerance& tol) {
    tol.validate();
    if (!(a <= b)) throw InvalidArgument("integrate_finite: need a <= b");
    if (a == b) return 0.0;

    std::priority_queue<Panel> panels;
    panels.push(gauss_kronrod_panel(f, a, b));
    double total = panels.top().value;
    double error = panels.top().error;

    for (int split = 0;; ++split) {
        if (!std::isfinite(total)) throw InvalidArgument("integrate_finite: integrand is not finite on [a, b]");
        if (error <= tol.abs_tol + tol.rel_tol * std::abs(total)) return total;
        if (split >= tol.max_iter) {
            throw MaxIterExceeded("integrate_finite: error estimate " + std::to_string(error) +
                                  " after " + std::to_string(split) + " subdivisions");
        }
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            throw MaxIterExceeded("integrate_finite: interval width reached machine precision");
        }
        const Panel left = gauss_kronrod_panel(f, worst.a, mid);
        const Panel right = gauss_kronrod_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);

        // Rebuild the running sums now and then so cancellation does not accumulate.
        if (split % 64 == 63) {
            auto copy = panels;
            total = 0.0;
            error = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
}

namespace {

void probe_tail_decay(const ScalarFunction& f, double a) {
    constexpr int kFirst = 0;
    constexpr int kLast = 40;
    std::vector<double> weighted;
    for (int k = kFirst; k <= kLast; k += 10) {
        const double offset = std::ldexp(1.0, k);
        const double value = f(a + offset);
        if (!std::isfinite(value)) {
            throw Divergent("integrate_semi_infinite: integrand not finite at z = " + std::to_string(a + offset));
        }
        weighted.push_back(std::abs(value) * (offset + 1.0));
    }
    const double last = weighted.back();
    const double middle = weighted[weighted.size() / 2];
    if (last > 0.0 && last >= middle) {
        throw Divergent("integrate_semi_infinite: |f(z)| * z does not decay beyond a = " + std::to_string(a));
    }
}

}  // namespace

double integrate_semi_infinite(const ScalarFunction& f, double a, const Tolerance& tol) {
    tol.validate();
    if (!std::isfinite(a)) throw InvalidArgument("integrate_semi_infinite: lower limit must be finite");
    probe_tail_decay(f, a);

    const auto mapped = [&f, a](double t) {
        const double gap = 1.0 - t;
        const double value = f(a + t / gap);
        if (value == 0.0) return 0.0;
        return value / (gap * gap);
    };
    return integrate_finite(mapped, 0.0, 1.0, tol);
}

}  // namespace ruinkit
