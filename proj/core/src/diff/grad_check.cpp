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

#include "gyromoe/diff/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gyromoe/error.hpp"

namespace gyromoe::diff {
namespace {

double evaluate(const ParamFn& f) {
  Graph g;
  const Var out = f(g);
  if (out.value().rank() != 0) throw ContractError("grad_check requires a scalar-valued function");
  return out.value()[0];
}

std::vector<std::size_t> probe_entries(std::size_t size, std::size_t limit, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (limit == 0 || size <= limit) return idx;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(limit);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

GradCheckReport grad_check(const ParamFn& f, std::span<Param* const> params, const GradCheckOptions& options) {
  std::vector<Tensor> saved;
  saved.reserve(params.size());
  for (Param* p : params) {
    saved.push_back(p->grad);
    p->zero_grad();
  }
  {
    Graph g;
    const Var out = f(g);
    g.backward(out);
  }
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    analytic.push_back(params[k]->grad);
    params[k]->grad = saved[k];
  }

  GradCheckReport report;
  std::mt19937_64 rng(options.sample_seed);
  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& value = params[k]->value;
    for (std::size_t i : probe_entries(value.size(), options.max_entries_per_param, rng)) {
      const double original = value[i];
      value[i] = original + options.eps;
      const double up = evaluate(f);
      value[i] = original - options.eps;
      const double down = evaluate(f);
      value[i] = original;
      const double numeric = (up - down) / (2.0 * options.eps);
      const double a = analytic[k][i];
      const double abs_err = std::abs(a - numeric);
      const double rel_err = abs_err / std::max({std::abs(a), std::abs(numeric), options.floor});
      report.max_abs_error = std::max(report.max_abs_error, abs_err);
      report.max_rel_error = std::max(report.max_rel_error, rel_err);
      ++report.checked;
    }
  }
  report.passed = report.max_rel_error <= options.tol;
  return report;
}

GradCheckReport grad_check(const InputFn& f, std::vector<Tensor> inputs, const GradCheckOptions& options) {
  std::vector<Param> store;
  store.reserve(inputs.size());
  for (auto& t : inputs) store.emplace_back(std::move(t));
  std::vector<Param*> ptrs;
  for (auto& p : store) ptrs.push_back(&p);
  auto wrapped = [&](Graph& g) {
    std::vector<Var> vars;
    vars.reserve(store.size());
    for (auto& p : store) vars.push_back(g.param(p));
    return f(g, vars);
  };
  return grad_check(ParamFn(wrapped), ptrs, options);
}

}  // namespace gyromoe::diff
