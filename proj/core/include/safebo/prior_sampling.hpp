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

#ifndef SAFEBO_PRIOR_SAMPLING_HPP_
#define SAFEBO_PRIOR_SAMPLING_HPP_

#include <cstdint>

#include "safebo/kernel.hpp"
#include "safebo/types.hpp"

namespace safebo {

// One draw of a zero-mean GP with `kernel` at the columns of `grid`.
// Deterministic in `seed`; repeated grid points receive identical values.
Vector sample_prior_function(const KernelSpec& kernel, const PointSet& grid, std::uint64_t seed);

// Same distribution on box.grid(resolution), exploiting the Kronecker
// structure of the RBF Gram matrix on a product grid. Values follow the
// grid's lexicographic order.
Vector sample_prior_on_product_grid(const KernelSpec& kernel, const Box& box, int resolution,
                                    std::uint64_t seed);

// Lower Cholesky factor of `gram` with the escalating diagonal jitter policy.
Matrix jittered_cholesky(const Matrix& gram, double outputscale);

}  // namespace safebo

#endif  // SAFEBO_PRIOR_SAMPLING_HPP_
