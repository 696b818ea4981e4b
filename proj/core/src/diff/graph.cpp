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

#include "gyromoe/diff/graph.hpp"

#include "gyromoe/error.hpp"

namespace gyromoe::diff {

const Tensor& Var::value() const { return graph_->value(*this); }

Var Graph::constant(Tensor value) {
  Node node;
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Graph::param(Param& p) {
  Node node;
  node.value = p.value;
  node.param = &p;
  node.requires_grad = true;
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Graph::record(Tensor value, std::vector<Var> parents, BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  node.parents.reserve(parents.size());
  for (const Var& p : parents) {
    if (&p.graph() != this) throw ContractError("operands belong to different graphs");
    node.parents.push_back(p.id());
    node.requires_grad = node.requires_grad || nodes_[p.id()].requires_grad;
  }
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

void Graph::backward(Var output) {
  backward(output, [](Param& p, const Tensor& g) { p.grad += g; });
}

void Graph::backward(Var output, const GradSink& sink) {
  if (&output.graph() != this) throw ContractError("output was not recorded in this graph");
  if (nodes_[output.id()].value.rank() != 0) {
    throw ContractError("backward requires a scalar output, got shape " +
                        to_string(nodes_[output.id()].value.shape()));
  }
  for (auto& n : nodes_) n.grad_ready = false;
  Node& out = nodes_[output.id()];
  out.grad = Tensor(out.value.shape(), 1.0);
  out.grad_ready = true;

  std::vector<Tensor*> parent_grads;
  for (std::size_t i = output.id() + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.grad_ready || !node.requires_grad) continue;
    if (node.param != nullptr) sink(*node.param, node.grad);
    if (!node.backward) continue;
    parent_grads.clear();
    for (std::size_t pid : node.parents) {
      Node& parent = nodes_[pid];
      if (!parent.requires_grad) {
        parent_grads.push_back(nullptr);
        continue;
      }
      if (!parent.grad_ready) {
        parent.grad = Tensor(parent.value.shape(), 0.0);
        parent.grad_ready = true;
      }
      parent_grads.push_back(&parent.grad);
    }
    node.backward(node.grad, parent_grads);
  }
}

Tensor Graph::grad(Var v) const {
  const Node& node = nodes_[v.id()];
  if (!node.grad_ready) return Tensor(node.value.shape(), 0.0);
  return node.grad;
}

}  // namespace gyromoe::diff
