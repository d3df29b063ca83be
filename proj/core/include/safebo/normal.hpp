// Copyright 2026 The safebo Authors.
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

#ifndef SAFEBO_NORMAL_HPP_
#define SAFEBO_NORMAL_HPP_

namespace safebo {

// Standard normal density, distribution and a log-CDF that stays accurate
// deep in the lower tail.
double normal_pdf(double z);
double normal_cdf(double z);
double log_normal_cdf(double z);

// phi(z) / Phi(z), computed without underflow for very negative z.
double inverse_mills_ratio(double z);

}  // namespace safebo

#endif  // SAFEBO_NORMAL_HPP_
