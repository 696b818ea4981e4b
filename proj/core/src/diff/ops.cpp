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

#include "gyromoe/diff/ops.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gyromoe/error.hpp"

namespace gyromoe::diff {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

std::string shapes(const char* op, const Tensor& a, const Tensor& b) {
  return std::string(op) + ": incompatible shapes " + to_string(a.shape()) + " and " + to_string(b.shape());
}

Graph& graph_of(Var v) {
  if (!v.valid()) throw ContractError("operation on an unbound variable");
  return v.graph();
}

bool is_row_vector_for(const Tensor& m, const Tensor& v) {
  if (m.rank() != 2) return false;
  if (v.rank() == 1) return v.shape()[0] == m.cols();
  return v.rank() == 2 && v.rows() == 1 && v.cols() == m.cols() && m.rows() != 1;
}

Eigen::Map<const RowMat> view(const Tensor& t) {
  return Eigen::Map<const RowMat>(t.data().data(), static_cast<Eigen::Index>(t.rows()),
                                  static_cast<Eigen::Index>(t.cols()));
}

Eigen::Map<RowMat> view(Tensor& t) {
  return Eigen::Map<RowMat>(t.data().data(), static_cast<Eigen::Index>(t.rows()),
                            static_cast<Eigen::Index>(t.cols()));
}

template <class F>
Tensor map_values(const Tensor& a, F f) {
  Tensor out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

double sigmoid_scalar(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

Tensor matmul_value(const Tensor& a, const Tensor& b, bool transpose_a, bool transpose_b) {
  check(a.rank() == 2 && b.rank() == 2, shapes("matmul", a, b));
  const std::size_t m = transpose_a ? a.cols() : a.rows();
  const std::size_t k = transpose_a ? a.rows() : a.cols();
  const std::size_t k2 = transpose_b ? b.cols() : b.rows();
  const std::size_t n = transpose_b ? b.rows() : b.cols();
  check(k == k2, shapes("matmul", a, b));
  Tensor out(Shape{m, n});
  if (m == 0 || n == 0) return out;
  auto c = view(out);
  const auto av = view(a);
  const auto bv = view(b);
  if (!transpose_a && !transpose_b) c.noalias() = av * bv;
  else if (transpose_a && !transpose_b) c.noalias() = av.transpose() * bv;
  else if (!transpose_a && transpose_b) c.noalias() = av * bv.transpose();
  else c.noalias() = av.transpose() * bv.transpose();
  return out;
}

Var matmul(Var a, Var b) {
  Graph& g = graph_of(a);
  Tensor out = matmul_value(a.value(), b.value());
  return g.record(std::move(out), {a, b}, [a, b](const Tensor& go, std::span<Tensor* const> pg) {
    if (pg[0]) *pg[0] += matmul_value(go, b.value(), false, true);
    if (pg[1]) *pg[1] += matmul_value(a.value(), go, true, false);
  });
}

Var add(Var a, Var b) {
  Graph& g = graph_of(a);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() == bv.shape()) {
    Tensor out = av;
    out += bv;
    return g.record(std::move(out), {a, b}, [](const Tensor& go, std::span<Tensor* const> pg) {
      if (pg[0]) *pg[0] += go;
      if (pg[1]) *pg[1] += go;
    });
  }
  check(is_row_vector_for(av, bv), shapes("add", av, bv));
  Tensor out = av;
  const std::size_t rows = av.rows(), cols = av.cols();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) += bv[c];
  return g.record(std::move(out), {a, b}, [rows, cols](const Tensor& go, std::span<Tensor* const> pg) {
    if (pg[0]) *pg[0] += go;
    if (pg[1]) {
      Tensor& gb = *pg[1];
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) gb[c] += go.at(r, c);
    }
  });
}

Var sub(Var a, Var b) {
  Graph& g = graph_of(a);
  check(a.shape() == b.shape(), shapes("sub", a.value(), b.value()));
  Tensor out = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
  return g.record(std::move(out), {a, b}, [](const Tensor& go, std::span<Tensor* const> pg) {
    if (pg[0]) *pg[0] += go;
    if (pg[1]) {
      for (std::size_t i = 0; i < go.size(); ++i) (*pg[1])[i] -= go[i];
    }
  });
}

Var mul(Var a, Var b) {
  Graph& g = graph_of(a);
  check(a.shape() == b.shape(), shapes("mul", a.value(), b.value()));
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  Tensor out(av.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  return g.record(std::move(out), {a, b}, [a, b](const Tensor& go, std::span<Tensor* const> pg) {
    const Tensor& av = a.value();
    const Tensor& bv = b.value();
    if (pg[0])
      for (std::size_t i = 0; i < go.size(); ++i) (*pg[0])[i] += go[i] * bv[i];
    if (pg[1])
      for (std::size_t i = 0; i < go.size(); ++i) (*pg[1])[i] += go[i] * av[i];
  });
}

Var scale(Var a, double factor) {
  Graph& g = graph_of(a);
  Tensor out = map_values(a.value(), [factor](double v) { return v * factor; });
  return g.record(std::move(out), {a}, [factor](const Tensor& go, std::span<Tensor* const> pg) {
    for (std::size_t i = 0; i < go.size(); ++i) (*pg[0])[i] += factor * go[i];
  });
}

Var row_softmax(Var a) {
  Graph& g = graph_of(a);
  const Tensor& av = a.value();
  check(av.rank() == 2 || av.rank() == 1, "row_softmax: expected rank 1 or 2, got " + to_string(av.shape()));
  const std::size_t rows = av.rows(), cols = av.cols();
  Tensor out(av.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    const double* in = av.data().data() + r * cols;
    double* o = out.data().data() + r * cols;
    const double mx = *std::max_element(in, in + cols);
    double total = 0.0;
    for (std::size_t c = 0; c < cols; ++c) total += (o[c] = std::exp(in[c] - mx));
    for (std::size_t c = 0; c < cols; ++c) o[c] /= total;
  }
  Tensor y = out;
  return g.record(std::move(out), {a}, [y = std::move(y), rows, cols](const Tensor& go, std::span<Tensor* const> pg) {
    Tensor& ga = *pg[0];
    for (std::size_t r = 0; r < rows; ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < cols; ++c) dot += go[r * cols + c] * y[r * cols + c];
      for (std::size_t c = 0; c < cols; ++c) ga[r * cols + c] += y[r * cols + c] * (go[r * cols + c] - dot);
    }
  });
}

Var layer_norm(Var x, Var gain, Var bias, double eps) {
  Graph& g = graph_of(x);
  const Tensor& xv = x.value();
  check(xv.rank() == 2, "layer_norm: expected a matrix, got " + to_string(xv.shape()));
  const std::size_t rows = xv.rows(), cols = xv.cols();
  check(gain.value().size() == cols && bias.value().size() == cols,
        shapes("layer_norm", xv, gain.value()));
  Tensor normed(xv.shape());
  std::vector<double> inv_std(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double mu = 0.0;
    for (std::size_t c = 0; c < cols; ++c) mu += xv.at(r, c);
    mu /= static_cast<double>(cols);
    double var = 0.0;
    for (std::size_t c = 0; c < cols; ++c) var += (xv.at(r, c) - mu) * (xv.at(r, c) - mu);
    var /= static_cast<double>(cols);
    inv_std[r] = 1.0 / std::sqrt(var + eps);
    for (std::size_t c = 0; c < cols; ++c) normed.at(r, c) = (xv.at(r, c) - mu) * inv_std[r];
  }
  const Tensor& gv = gain.value();
  const Tensor& bv = bias.value();
  Tensor out(xv.shape());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = normed.at(r, c) * gv[c] + bv[c];

  return g.record(std::move(out), {x, gain, bias},
                  [gain, normed = std::move(normed), inv_std = std::move(inv_std), rows, cols](
                      const Tensor& go, std::span<Tensor* const> pg) {
                    const Tensor& gv = gain.value();
                    if (pg[2])
                      for (std::size_t r = 0; r < rows; ++r)
                        for (std::size_t c = 0; c < cols; ++c) (*pg[2])[c] += go.at(r, c);
                    if (pg[1])
                      for (std::size_t r = 0; r < rows; ++r)
                        for (std::size_t c = 0; c < cols; ++c) (*pg[1])[c] += go.at(r, c) * normed.at(r, c);
                    if (pg[0]) {
                      const double inv_n = 1.0 / static_cast<double>(cols);
                      for (std::size_t r = 0; r < rows; ++r) {
                        double mean_d = 0.0, mean_dx = 0.0;
                        for (std::size_t c = 0; c < cols; ++c) {
                          const double d = go.at(r, c) * gv[c];
                          mean_d += d;
                          mean_dx += d * normed.at(r, c);
                        }
                        mean_d *= inv_n;
                        mean_dx *= inv_n;
                        for (std::size_t c = 0; c < cols; ++c) {
                          const double d = go.at(r, c) * gv[c];
                          pg[0]->at(r, c) += inv_std[r] * (d - mean_d - normed.at(r, c) * mean_dx);
                        }
                      }
                    }
                  });
}

Var gelu(Var a) {
  Graph& g = graph_of(a);
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  Tensor out = map_values(a.value(), [](double v) { return 0.5 * v * (1.0 + std::erf(v * inv_sqrt2)); });
  return g.record(std::move(out), {a}, [a](const Tensor& go, std::span<Tensor* const> pg) {
    const Tensor& av = a.value();
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < go.size(); ++i) {
      const double v = av[i];
      const double cdf = 0.5 * (1.0 + std::erf(v * inv_sqrt2));
      const double pdf = inv_sqrt_2pi * std::exp(-0.5 * v * v);
      (*pg[0])[i] += go[i] * (cdf + v * pdf);
    }
  });
}

Var sigmoid(Var a) {
  Graph& g = graph_of(a);
  Tensor out = map_values(a.value(), sigmoid_scalar);
  Tensor y = out;
  return g.record(std::move(out), {a}, [y = std::move(y)](const Tensor& go, std::span<Tensor* const> pg) {
    for (std::size_t i = 0; i < go.size(); ++i) (*pg[0])[i] += go[i] * y[i] * (1.0 - y[i]);
  });
}

Var log(Var a) {
  Graph& g = graph_of(a);
  Tensor out = map_values(a.value(), [](double v) { return std::log(v); });
  return g.record(std::move(out), {a}, [a](const Tensor& go, std::span<Tensor* const> pg) {
    const Tensor& av = a.value();
    for (std::size_t i = 0; i < go.size(); ++i) (*pg[0])[i] += go[i] / av[i];
  });
}

Var square(Var a) {
  Graph& g = graph_of(a);
  Tensor out = map_values(a.value(), [](double v) { return v * v; });
  return g.record(std::move(out), {a}, [a](const Tensor& go, std::span<Tensor* const> pg) {
    const Tensor& av = a.value();
    for (std::size_t i = 0; i < go.size(); ++i) (*pg[0])[i] += 2.0 * av[i] * go[i];
  });
}

Var gather(Var a, std::span<const std::size_t> indices) {
  Graph& g = graph_of(a);
  const Tensor& av = a.value();
  check(av.rank() == 1 || av.rank() == 2, "gather: expected rank 1 or 2, got " + to_string(av.shape()));
  const std::size_t extent = av.rank() == 1 ? av.size() : av.rows();
  const std::size_t width = av.rank() == 1 ? 1 : av.cols();
  for (std::size_t idx : indices) {
    check(idx < extent, "gather: index " + std::to_string(idx) + " out of range for shape " + to_string(av.shape()));
  }
  Shape shape = av.rank() == 1 ? Shape{indices.size()} : Shape{indices.size(), width};
  Tensor out(shape);
  for (std::size_t i = 0; i < indices.size(); ++i)
    std::copy_n(av.data().begin() + static_cast<std::ptrdiff_t>(indices[i] * width), width,
                out.data().begin() + static_cast<std::ptrdiff_t>(i * width));
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  return g.record(std::move(out), {a}, [idx = std::move(idx), width](const Tensor& go, std::span<Tensor* const> pg) {
    Tensor& ga = *pg[0];
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t c = 0; c < width; ++c) ga[idx[i] * width + c] += go[i * width + c];
  });
}

Var scatter(Var a, std::span<const std::size_t> indices, std::size_t total) {
  Graph& g = graph_of(a);
  const Tensor& av = a.value();
  check(av.rank() == 1 || av.rank() == 2, "scatter: expected rank 1 or 2, got " + to_string(av.shape()));
  const std::size_t extent = av.rank() == 1 ? av.size() : av.rows();
  check(extent == indices.size(), "scatter: " + std::to_string(indices.size()) + " indices for shape " +
                                      to_string(av.shape()));
  const std::size_t width = av.rank() == 1 ? 1 : av.cols();
  for (std::size_t idx : indices) check(idx < total, "scatter: index " + std::to_string(idx) + " >= " + std::to_string(total));
  Shape shape = av.rank() == 1 ? Shape{total} : Shape{total, width};
  Tensor out(shape);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t c = 0; c < width; ++c) out[indices[i] * width + c] += av[i * width + c];
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  return g.record(std::move(out), {a}, [idx = std::move(idx), width](const Tensor& go, std::span<Tensor* const> pg) {
    Tensor& ga = *pg[0];
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t c = 0; c < width; ++c) ga[i * width + c] += go[idx[i] * width + c];
  });
}

Var sum(Var a) {
  Graph& g = graph_of(a);
  double total = 0.0;
  for (double v : a.value().data()) total += v;
  return g.record(Tensor::scalar(total), {a}, [](const Tensor& go, std::span<Tensor* const> pg) {
    const double s = go[0];
    for (double& v : pg[0]->data()) v += s;
  });
}

Var mean(Var a) {
  const std::size_t n = a.value().size();
  check(n > 0, "mean of an empty tensor");
  return scale(sum(a), 1.0 / static_cast<double>(n));
}

Var concat(std::span<const Var> parts, std::size_t axis) {
  check(!parts.empty(), "concat: no operands");
  check(axis < 2, "concat: axis must be 0 or 1");
  Graph& g = graph_of(parts[0]);
  const Tensor& first = parts[0].value();
  check(first.rank() == 2, "concat: expected matrices, got " + to_string(first.shape()));
  std::size_t rows = 0, cols = 0;
  for (const Var& p : parts) {
    const Tensor& t = p.value();
    check(t.rank() == 2, "concat: expected matrices, got " + to_string(t.shape()));
    if (axis == 0) {
      check(t.cols() == first.cols(), shapes("concat", first, t));
      rows += t.rows();
      cols = t.cols();
    } else {
      check(t.rows() == first.rows(), shapes("concat", first, t));
      cols += t.cols();
      rows = t.rows();
    }
  }
  Tensor out(Shape{rows, cols});
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (const Var& p : parts) {
    const Tensor& t = p.value();
    offsets.push_back(offset);
    for (std::size_t r = 0; r < t.rows(); ++r)
      for (std::size_t c = 0; c < t.cols(); ++c) {
        if (axis == 0) out.at(offset + r, c) = t.at(r, c);
        else out.at(r, offset + c) = t.at(r, c);
      }
    offset += axis == 0 ? t.rows() : t.cols();
  }
  std::vector<Var> parents(parts.begin(), parts.end());
  std::vector<Shape> part_shapes;
  for (const Var& p : parts) part_shapes.push_back(p.shape());
  return g.record(std::move(out), parents,
                  [offsets = std::move(offsets), part_shapes = std::move(part_shapes), axis](
                      const Tensor& go, std::span<Tensor* const> pg) {
                    for (std::size_t k = 0; k < pg.size(); ++k) {
                      if (!pg[k]) continue;
                      const std::size_t pr = part_shapes[k][0], pc = part_shapes[k][1];
                      for (std::size_t r = 0; r < pr; ++r)
                        for (std::size_t c = 0; c < pc; ++c)
                          pg[k]->at(r, c) += axis == 0 ? go.at(offsets[k] + r, c) : go.at(r, offsets[k] + c);
                    }
                  });
}

Var slice_cols(Var a, std::size_t begin, std::size_t end) {
  Graph& g = graph_of(a);
  const Tensor& av = a.value();
  check(av.rank() == 2 && begin <= end && end <= av.cols(),
        "slice_cols: [" + std::to_string(begin) + ", " + std::to_string(end) + ") of " + to_string(av.shape()));
  const std::size_t rows = av.rows(), width = end - begin;
  Tensor out(Shape{rows, width});
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < width; ++c) out.at(r, c) = av.at(r, begin + c);
  return g.record(std::move(out), {a}, [rows, width, begin](const Tensor& go, std::span<Tensor* const> pg) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < width; ++c) pg[0]->at(r, begin + c) += go.at(r, c);
  });
}

Var transpose(Var a) {
  Graph& g = graph_of(a);
  const Tensor& av = a.value();
  check(av.rank() == 2, "transpose: expected a matrix, got " + to_string(av.shape()));
  Tensor out(Shape{av.cols(), av.rows()});
  view(out) = view(av).transpose();
  return g.record(std::move(out), {a}, [](const Tensor& go, std::span<Tensor* const> pg) {
    view(*pg[0]) += view(go).transpose();
  });
}

Var reshape(Var a, Shape shape) {
  Graph& g = graph_of(a);
  check(element_count(shape) == a.value().size(),
        "reshape: cannot view " + to_string(a.shape()) + " as " + to_string(shape));
  Tensor out(std::move(shape), std::vector<double>(a.value().data().begin(), a.value().data().end()));
  return g.record(std::move(out), {a}, [](const Tensor& go, std::span<Tensor* const> pg) {
    for (std::size_t i = 0; i < go.size(); ++i) (*pg[0])[i] += go[i];
  });
}

Var gaussian_bias(Var sigma, std::span<const std::size_t> positions) {
  Graph& g = graph_of(sigma);
  check(sigma.value().size() == 1, "gaussian_bias: sigma must hold one value, got " + to_string(sigma.shape()));
  const double s = sigma.value()[0];
  if (!(s > 0.0)) throw ContractError("gaussian_bias: sigma must be positive");
  const std::size_t n = positions.size();
  Tensor out(Shape{n, n});
  std::vector<double> d2(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = static_cast<double>(positions[i]) - static_cast<double>(positions[j]);
      d2[i * n + j] = d * d;
      out.at(i, j) = -d * d / (2.0 * s * s);
    }
  return g.record(std::move(out), {sigma}, [sigma, d2 = std::move(d2)](const Tensor& go, std::span<Tensor* const> pg) {
    const double s = sigma.value()[0];
    double acc = 0.0;
    for (std::size_t i = 0; i < d2.size(); ++i) acc += go[i] * d2[i];
    (*pg[0])[0] += acc / (s * s * s);
  });
}

}  // namespace gyromoe::diff
