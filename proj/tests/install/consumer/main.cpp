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

#include <cmath>
#include <cstdio>

#include "ruinkit/analytic.hpp"

int main() {
    const ruinkit::ModelParams model(2.0, 1.0, ruinkit::Exponential{1.0});
    const double psi = ruinkit::psi_classical(model, 2.0).value;
    std::printf("psi_cl(2) = %.10f\n", psi);
    return std::abs(psi - 0.5 * std::exp(-1.0)) < 1e-12 ? 0 : 1;
}
