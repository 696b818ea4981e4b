/* Copyright 2026 The GyroMoE Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gyromoe/diff/graph.hpp"

namespace gyromoe::diff {

// Every primitive records itself into the graph of its first argument and
// defines an exact adjoint. Shape mismatches raise DimensionError.

Var matmul(Var a, Var b);
/// Same-shape sum, or (matrix [m x n], row vector [n] / [1 x n]) bias add.
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double factor);
Var row_softmax(Var a);
/// Row-wise normalization with learnable per-column gain and bias.
Var layer_norm(Var x, Var gain, Var bias, double eps = 1e-5);
Var gelu(Var a);
Var sigmoid(Var a);
Var log(Var a);
Var square(Var a);
/// Selects entries (rank 1) or rows (rank 2) along axis 0.
Var gather(Var a, std::span<const std::size_t> indices);
/// Inverse of gather: places the rows of `a` at `indices` of a zero tensor
/// with `total` rows.
Var scatter(Var a, std::span<const std::size_t> indices, std::size_t total);
Var mean(Var a);
Var sum(Var a);
/// Rank-2 concatenation along axis 0 (rows) or 1 (columns).
Var concat(std::span<const Var> parts, std::size_t axis);
Var slice_cols(Var a, std::size_t begin, std::size_t end);
Var transpose(Var a);
Var reshape(Var a, Shape shape);
/// B_ij = -(p_i - p_j)^2 / (2 sigma^2) for token positions p; sigma is a
/// scalar (or single-element) variable.
Var gaussian_bias(Var sigma, std::span<const std::size_t> positions);

/// Plain (non-recorded) matrix product, shared by forward and adjoint code.
Tensor matmul_value(const Tensor& a, const Tensor& b, bool transpose_a = false, bool transpose_b = false);

}  // namespace gyromoe::diff
