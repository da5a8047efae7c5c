// Copyright 2026 The povmlab Authors
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

#include <cstdint>
#include <random>

#include "povmlab/linalg.hpp"

namespace povmlab {

/// Every seeded sample in the library draws from this engine.
using Rng = std::mt19937_64;

/// Haar-distributed unit vector (normalised complex Gaussian).
Vector haar_random_vector(std::size_t dim, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Operator random_unitary(std::size_t dim, Rng& rng);
/// GUE-like Hermitian matrix with unit-variance entries.
Operator random_hermitian(std::size_t dim, Rng& rng);
/// Full-rank density matrix G G^dag / tr.
Operator random_density_matrix(std::size_t dim, Rng& rng);
/// Random effect: U diag(u_i) U^dag with u_i uniform in [0,1].
Operator random_effect_operator(std::size_t dim, Rng& rng);

}  // namespace povmlab
