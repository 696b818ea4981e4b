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
#include <functional>
#include <span>
#include <vector>

#include "gyromoe/diff/tensor.hpp"

namespace gyromoe::diff {

class Graph;

/// Handle to a value recorded in a Graph.
class Var {
 public:
  Var() = default;
  Var(Graph* graph, std::size_t id) : graph_(graph), id_(id) {}

  Graph& graph() const { return *graph_; }
  std::size_t id() const noexcept { return id_; }
  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
  bool valid() const noexcept { return graph_ != nullptr; }

 private:
  Graph* graph_ = nullptr;
  std::size_t id_ = 0;
};

/// Adjoint of one recorded operation. `parent_grads[i]` is null when parent
/// i does not require a gradient.
using BackwardFn = std::function<void(const Tensor& grad_out, std::span<Tensor* const> parent_grads)>;

/// Receives the gradient of each Param reached by a backward pass.
using GradSink = std::function<void(Param&, const Tensor&)>;

/// Operation trace for reverse accumulation. Single-threaded; distinct
/// graphs over shared read-only parameters may run concurrently.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var constant(Tensor value);
  Var param(Param& p);

  Var record(Tensor value, std::vector<Var> parents, BackwardFn backward);

  const Tensor& value(Var v) const { return nodes_[v.id()].value; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Reverse pass from a scalar output. Each node is visited once; Param
  /// gradients are added into Param::grad, so repeated calls accumulate.
  void backward(Var output);
  void backward(Var output, const GradSink& sink);

  /// Gradient of the last backward pass at an intermediate node (zeros if
  /// the node was not reached).
  Tensor grad(Var v) const;

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::vector<std::size_t> parents;
    BackwardFn backward;
    Param* param = nullptr;
    bool requires_grad = false;
    bool grad_ready = false;
  };
  std::vector<Node> nodes_;
};

}  // namespace gyromoe::diff
