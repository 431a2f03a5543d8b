// Copyright 2026 The wavestat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace wavestat::exactstats {

/// log Γ(x) for x > 0 with ~1e-15 relative accuracy, including near the
/// zeros at x = 1 and x = 2. Throws Error(kDomainError) for x <= 0 or NaN.
double log_gamma(double x);

/// log B(a, b) = log Γ(a) + log Γ(b) - log Γ(a + b). Large arguments use a
/// cancellation-free Stirling difference.
double log_beta(double a, double b);

double beta(double a, double b);

}  // namespace wavestat::exactstats
