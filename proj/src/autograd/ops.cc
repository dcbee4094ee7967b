// autograd/ops.cc

// Copyright 2026  The vqvc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "autograd/ops.h"

#include <atomic>
#include <cmath>

namespace vqvc {
namespace ag {

namespace {

std::atomic<bool> g_nan_check{false};

using MatMap = Eigen::Map<RowMatrix>;
using ConstMatMap = Eigen::Map<const RowMatrix>;

bool Recording(std::initializer_list<const Value *> inputs) {
  if (ActiveTape() == nullptr) return false;
  for (const Value *v : inputs)
    if (v->requires_grad()) return true;
  return false;
}

void Record(std::function<void()> fn) { ActiveTape()->Record(std::move(fn)); }

void CheckFinite(const Value &v, const char *op) {
  if (!g_nan_check.load(std::memory_order_relaxed) && !DebugEnabled()) return;
  for (double x : v.data())
    if (!std::isfinite(x))
      throw Error(std::string("non-finite value produced by ") + op);
}

int NormalizeAxis(int axis, int rank, const char *op) {
  if (axis < 0) axis += rank;
  if (axis < 0 || axis >= rank)
    throw Error(fmt::format("{}: axis out of range for rank {}", op, rank));
  return axis;
}

// Broadcast rule: b is a scalar, has a's shape, or matches a's trailing dims.
int64_t BroadcastPeriod(const Value &a, const Value &b, const char *op) {
  if (b.numel() == 1) return 1;
  const Shape &sa = a.shape(), &sb = b.shape();
  size_t skip = 0;
  while (skip < sb.size() && sb[skip] == 1 && sb.size() - skip > 0 &&
         sb.size() - skip > sa.size())
    skip++;
  size_t nb = sb.size() - skip;
  bool ok = nb <= sa.size();
  for (size_t i = 0; ok && i < nb; i++)
    ok = sb[skip + i] == sa[sa.size() - nb + i];
  if (!ok)
    throw Error(fmt::format("{}: shape mismatch {} vs {}", op, ShapeString(sa),
                            ShapeString(sb)));
  return b.numel();
}

template <typename Fwd, typename DA, typename DB>
Value Binary(const Value &a, const Value &b, const char *op, Fwd fwd, DA da,
             DB db) {
  const int64_t period = BroadcastPeriod(a, b, op);
  bool rec = Recording({&a, &b});
  Value out = MakeResult(a.shape(), rec);
  const auto &x = a.data();
  const auto &y = b.data();
  auto &z = out.data();
  const int64_t n = a.numel();
  if (period == n) {
    for (int64_t i = 0; i < n; i++) z[i] = fwd(x[i], y[i]);
  } else {
    for (int64_t i = 0; i < n; i++) z[i] = fwd(x[i], y[i % period]);
  }
  CheckFinite(out, op);
  if (rec) {
    Record([a, b, out, period, da, db]() mutable {
      const auto &g = out.grad();
      const auto &x = a.data();
      const auto &y = b.data();
      const auto &z = out.data();
      const int64_t n = a.numel();
      if (a.requires_grad()) {
        auto &ga = a.grad();
        for (int64_t i = 0; i < n; i++)
          ga[i] += g[i] * da(x[i], y[i % period], z[i]);
      }
      if (b.requires_grad()) {
        auto &gb = b.grad();
        for (int64_t i = 0; i < n; i++)
          gb[i % period] += g[i] * db(x[i], y[i % period], z[i]);
      }
    });
  }
  return out;
}

// Elementwise unary op; `deriv(x, y)` gives dy/dx from input and output.
template <typename Fwd, typename Deriv>
Value Unary(const Value &a, const char *op, Fwd fwd, Deriv deriv) {
  bool rec = Recording({&a});
  Value out = MakeResult(a.shape(), rec);
  const auto &x = a.data();
  auto &z = out.data();
  for (int64_t i = 0; i < a.numel(); i++) z[i] = fwd(x[i]);
  CheckFinite(out, op);
  if (rec) {
    Record([a, out, deriv]() mutable {
      const auto &g = out.grad();
      const auto &x = a.data();
      const auto &z = out.data();
      auto &ga = a.grad();
      for (int64_t i = 0; i < a.numel(); i++) ga[i] += g[i] * deriv(x[i], z[i]);
    });
  }
  return out;
}

// outer x axis x inner decomposition of a shape around `axis`.
void SplitShape(const Shape &s, int axis, int64_t *outer, int64_t *inner) {
  *outer = 1;
  *inner = 1;
  for (int i = 0; i < axis; i++) *outer *= s[i];
  for (size_t i = axis + 1; i < s.size(); i++) *inner *= s[i];
}

}  // namespace

void SetNanCheck(bool enabled) { g_nan_check.store(enabled); }

Value Add(const Value &a, const Value &b) {
  return Binary(
      a, b, "add", [](double x, double y) { return x + y; },
      [](double, double, double) { return 1.0; },
      [](double, double, double) { return 1.0; });
}

Value Sub(const Value &a, const Value &b) {
  return Binary(
      a, b, "sub", [](double x, double y) { return x - y; },
      [](double, double, double) { return 1.0; },
      [](double, double, double) { return -1.0; });
}

Value Mul(const Value &a, const Value &b) {
  return Binary(
      a, b, "mul", [](double x, double y) { return x * y; },
      [](double, double y, double) { return y; },
      [](double x, double, double) { return x; });
}

Value Div(const Value &a, const Value &b) {
  return Binary(
      a, b, "div", [](double x, double y) { return x / y; },
      [](double, double y, double) { return 1.0 / y; },
      [](double, double y, double z) { return -z / y; });
}

Value Scale(const Value &a, double s) {
  return Unary(
      a, "scale", [s](double x) { return s * x; },
      [s](double, double) { return s; });
}

Value AddScalar(const Value &a, double s) {
  return Unary(
      a, "add_scalar", [s](double x) { return x + s; },
      [](double, double) { return 1.0; });
}

Value Square(const Value &a) {
  return Unary(
      a, "square", [](double x) { return x * x; },
      [](double x, double) { return 2.0 * x; });
}

Value Abs(const Value &a) {
  return Unary(
      a, "abs", [](double x) { return std::abs(x); },
      [](double x, double) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
}

Value Exp(const Value &a) {
  return Unary(
      a, "exp", [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Value Log(const Value &a) {
  return Unary(
      a, "log", [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Value Sqrt(const Value &a) {
  return Unary(
      a, "sqrt", [](double x) { return std::sqrt(x); },
      [](double, double y) { return y > 0.0 ? 0.5 / y : 0.0; });
}

Value Sigmoid(const Value &a) {
  return Unary(
      a, "sigmoid",
      [](double x) {
        if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
        double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Value Tanh(const Value &a) {
  return Unary(
      a, "tanh", [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Value Relu(const Value &a) {
  return Unary(
      a, "relu", [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Value Sum(const Value &a) {
  bool rec = Recording({&a});
  Value out = MakeResult({1}, rec);
  double s = 0.0;
  for (double x : a.data()) s += x;
  out.data()[0] = s;
  CheckFinite(out, "sum");
  if (rec) {
    Record([a, out]() mutable {
      double g = out.grad()[0];
      for (double &ga : a.grad()) ga += g;
    });
  }
  return out;
}

Value Mean(const Value &a) {
  if (a.numel() == 0) throw Error("mean: empty input");
  bool rec = Recording({&a});
  Value out = MakeResult({1}, rec);
  double s = 0.0;
  for (double x : a.data()) s += x;
  const double inv = 1.0 / static_cast<double>(a.numel());
  out.data()[0] = s * inv;
  CheckFinite(out, "mean");
  if (rec) {
    Record([a, out, inv]() mutable {
      double g = out.grad()[0] * inv;
      for (double &ga : a.grad()) ga += g;
    });
  }
  return out;
}

Value MeanAxis(const Value &a, int axis) {
  axis = NormalizeAxis(axis, a.rank(), "mean_axis");
  int64_t outer, inner;
  SplitShape(a.shape(), axis, &outer, &inner);
  const int len = a.shape()[axis];
  if (len == 0) throw Error("mean_axis: empty axis");
  Shape out_shape = a.shape();
  out_shape.erase(out_shape.begin() + axis);
  if (out_shape.empty()) out_shape = {1};
  bool rec = Recording({&a});
  Value out = MakeResult(out_shape, rec);
  const double inv = 1.0 / len;
  const auto &x = a.data();
  auto &z = out.data();
  for (int64_t o = 0; o < outer; o++)
    for (int l = 0; l < len; l++)
      for (int64_t i = 0; i < inner; i++)
        z[o * inner + i] += x[(o * len + l) * inner + i];
  for (double &v : z) v *= inv;
  CheckFinite(out, "mean_axis");
  if (rec) {
    Record([a, out, outer, inner, len, inv]() mutable {
      const auto &g = out.grad();
      auto &ga = a.grad();
      for (int64_t o = 0; o < outer; o++)
        for (int l = 0; l < len; l++)
          for (int64_t i = 0; i < inner; i++)
            ga[(o * len + l) * inner + i] += g[o * inner + i] * inv;
    });
  }
  return out;
}

Value MatMul(const Value &a, const Value &w) {
  if (w.rank() != 2 || a.last_dim() != w.dim(0))
    throw Error(fmt::format("matmul: shape mismatch {} x {}",
                            ShapeString(a.shape()), ShapeString(w.shape())));
  const int64_t rows = a.numel() / a.last_dim();
  const int k = w.dim(0), n = w.dim(1);
  Shape out_shape = a.shape();
  if (out_shape.empty()) out_shape = {1};
  out_shape.back() = n;
  bool rec = Recording({&a, &w});
  Value out = MakeResult(out_shape, rec);
  ConstMatMap am(a.data().data(), rows, k);
  ConstMatMap wm(w.data().data(), k, n);
  MatMap om(out.data().data(), rows, n);
  om.noalias() = am * wm;
  CheckFinite(out, "matmul");
  if (rec) {
    Record([a, w, out, rows, k, n]() mutable {
      ConstMatMap gm(out.grad().data(), rows, n);
      if (a.requires_grad()) {
        MatMap ga(a.grad().data(), rows, k);
        ConstMatMap wm(w.data().data(), k, n);
        ga.noalias() += gm * wm.transpose();
      }
      if (w.requires_grad()) {
        MatMap gw(w.grad().data(), k, n);
        ConstMatMap am(a.data().data(), rows, k);
        gw.noalias() += am.transpose() * gm;
      }
    });
  }
  return out;
}

Value Reshape(const Value &a, const Shape &shape) {
  if (NumElements(shape) != a.numel())
    throw Error(fmt::format("reshape: cannot view {} as {}",
                            ShapeString(a.shape()), ShapeString(shape)));
  bool rec = Recording({&a});
  Value out = MakeResult(shape, rec);
  out.data() = a.data();
  if (rec) {
    Record([a, out]() mutable {
      auto &ga = a.grad();
      const auto &g = out.grad();
      for (size_t i = 0; i < g.size(); i++) ga[i] += g[i];
    });
  }
  return out;
}

Value SwapLastAxes(const Value &a) {
  if (a.rank() < 2) throw Error("swap_last_axes: rank must be >= 2");
  const int m = a.dim(-2), n = a.dim(-1);
  const int64_t batch = a.numel() / (static_cast<int64_t>(m) * n);
  Shape out_shape = a.shape();
  std::swap(out_shape[out_shape.size() - 1], out_shape[out_shape.size() - 2]);
  bool rec = Recording({&a});
  Value out = MakeResult(out_shape, rec);
  for (int64_t b = 0; b < batch; b++) {
    ConstMatMap src(a.data().data() + b * m * n, m, n);
    MatMap dst(out.data().data() + b * m * n, n, m);
    dst = src.transpose();
  }
  if (rec) {
    Record([a, out, batch, m, n]() mutable {
      for (int64_t b = 0; b < batch; b++) {
        ConstMatMap g(out.grad().data() + b * m * n, n, m);
        MatMap ga(a.grad().data() + b * m * n, m, n);
        ga += g.transpose();
      }
    });
  }
  return out;
}

Value Concat(const std::vector<Value> &parts, int axis) {
  if (parts.empty()) throw Error("concat: no inputs");
  const Shape &base = parts[0].shape();
  axis = NormalizeAxis(axis, static_cast<int>(base.size()), "concat");
  Shape out_shape = base;
  out_shape[axis] = 0;
  bool any_grad = false;
  for (const Value &p : parts) {
    const Shape &s = p.shape();
    bool ok = s.size() == base.size();
    for (size_t i = 0; ok && i < s.size(); i++)
      ok = static_cast<int>(i) == axis || s[i] == base[i];
    if (!ok)
      throw Error(fmt::format("concat: shape mismatch {} vs {}",
                              ShapeString(base), ShapeString(s)));
    out_shape[axis] += s[axis];
    any_grad = any_grad || p.requires_grad();
  }
  bool rec = ActiveTape() != nullptr && any_grad;
  Value out = MakeResult(out_shape, rec);
  int64_t outer, inner;
  SplitShape(out_shape, axis, &outer, &inner);
  const int64_t out_row = out_shape[axis] * inner;
  std::vector<int64_t> offsets;
  int64_t offset = 0;
  for (const Value &p : parts) {
    offsets.push_back(offset);
    const int64_t row = p.shape()[axis] * inner;
    for (int64_t o = 0; o < outer; o++)
      std::copy_n(p.data().data() + o * row, row,
                  out.data().data() + o * out_row + offset);
    offset += row;
  }
  if (rec) {
    Record([parts, out, offsets, outer, inner, out_row, axis]() mutable {
      for (size_t k = 0; k < parts.size(); k++) {
        Value p = parts[k];
        if (!p.requires_grad()) continue;
        const int64_t row = p.shape()[axis] * inner;
        auto &gp = p.grad();
        const auto &g = out.grad();
        for (int64_t o = 0; o < outer; o++)
          for (int64_t i = 0; i < row; i++)
            gp[o * row + i] += g[o * out_row + offsets[k] + i];
      }
    });
  }
  return out;
}

Value Slice(const Value &a, int axis, int start, int length) {
  axis = NormalizeAxis(axis, a.rank(), "slice");
  const int full = a.shape()[axis];
  if (start < 0 || length < 0 || start + length > full)
    throw Error(fmt::format("slice: [{}, {}) outside axis of size {}", start,
                            start + length, full));
  Shape out_shape = a.shape();
  out_shape[axis] = length;
  int64_t outer, inner;
  SplitShape(a.shape(), axis, &outer, &inner);
  bool rec = Recording({&a});
  Value out = MakeResult(out_shape, rec);
  const int64_t in_row = full * inner, out_row = length * inner;
  for (int64_t o = 0; o < outer; o++)
    std::copy_n(a.data().data() + o * in_row + start * inner, out_row,
                out.data().data() + o * out_row);
  if (rec) {
    Record([a, out, outer, inner, in_row, out_row, start]() mutable {
      auto &ga = a.grad();
      const auto &g = out.grad();
      for (int64_t o = 0; o < outer; o++)
        for (int64_t i = 0; i < out_row; i++)
          ga[o * in_row + start * inner + i] += g[o * out_row + i];
    });
  }
  return out;
}

Value EmbeddingLookup(const Value &table, std::span<const int> indices,
                      const Shape &prefix) {
  if (table.rank() != 2) throw Error("embedding: table must be [N, D]");
  if (NumElements(prefix) != static_cast<int64_t>(indices.size()))
    throw Error("embedding: prefix shape does not match index count");
  const int rows = table.dim(0), width = table.dim(1);
  for (int idx : indices)
    if (idx < 0 || idx >= rows)
      throw Error(fmt::format("embedding: index {} out of range [0, {})", idx,
                              rows));
  Shape out_shape = prefix;
  out_shape.push_back(width);
  bool rec = Recording({&table});
  Value out = MakeResult(out_shape, rec);
  for (size_t i = 0; i < indices.size(); i++)
    std::copy_n(table.data().data() + static_cast<int64_t>(indices[i]) * width,
                width, out.data().data() + i * width);
  if (rec) {
    std::vector<int> idx(indices.begin(), indices.end());
    Record([table, out, idx, width]() mutable {
      auto &gt = table.grad();
      const auto &g = out.grad();
      for (size_t i = 0; i < idx.size(); i++)
        for (int d = 0; d < width; d++)
          gt[static_cast<int64_t>(idx[i]) * width + d] += g[i * width + d];
    });
  }
  return out;
}

Value SoftmaxCrossEntropy(const Value &logits, std::span<const int> classes) {
  const int num_classes = logits.last_dim();
  const int64_t rows = logits.numel() / num_classes;
  if (rows != static_cast<int64_t>(classes.size()))
    throw Error(fmt::format(
        "softmax_cross_entropy: {} rows of logits but {} class labels", rows,
        classes.size()));
  for (int c : classes)
    if (c < 0 || c >= num_classes)
      throw Error(fmt::format(
          "softmax_cross_entropy: class {} out of range [0, {})", c,
          num_classes));
  bool rec = Recording({&logits});
  Value out = MakeResult({1}, rec);
  std::vector<double> probs(logits.numel());
  const auto &x = logits.data();
  double loss = 0.0;
  for (int64_t r = 0; r < rows; r++) {
    const double *row = x.data() + r * num_classes;
    double mx = *std::max_element(row, row + num_classes);
    double z = 0.0;
    for (int c = 0; c < num_classes; c++) z += std::exp(row[c] - mx);
    double lse = mx + std::log(z);
    for (int c = 0; c < num_classes; c++)
      probs[r * num_classes + c] = std::exp(row[c] - lse);
    loss += lse - row[classes[r]];
  }
  out.data()[0] = loss / rows;
  CheckFinite(out, "softmax_cross_entropy");
  if (rec) {
    std::vector<int> cls(classes.begin(), classes.end());
    Record([logits, out, probs, cls, rows, num_classes]() mutable {
      double g = out.grad()[0] / rows;
      auto &gl = logits.grad();
      for (int64_t r = 0; r < rows; r++)
        for (int c = 0; c < num_classes; c++)
          gl[r * num_classes + c] +=
              g * (probs[r * num_classes + c] - (c == cls[r] ? 1.0 : 0.0));
    });
  }
  return out;
}

Value Conv1dDilated(const Value &input, const Value &kernel, int dilation,
                    bool causal) {
  if (kernel.rank() != 3) throw Error("conv1d: kernel must be [k, Cin, Cout]");
  if (input.rank() != 2 && input.rank() != 3)
    throw Error("conv1d: input must be [T, Cin] or [B, T, Cin]");
  const int k = kernel.dim(0), cin = kernel.dim(1), cout = kernel.dim(2);
  if (k < 1 || dilation < 1) throw Error("conv1d: need k >= 1 and dilation >= 1");
  if (input.last_dim() != cin)
    throw Error(fmt::format("conv1d: channel mismatch, input {} kernel {}",
                            ShapeString(input.shape()),
                            ShapeString(kernel.shape())));
  const int batch = input.rank() == 3 ? input.dim(0) : 1;
  const int frames = input.dim(-2);
  const int total_pad = (k - 1) * dilation;
  const int left_pad = causal ? total_pad : total_pad / 2;
  Shape out_shape = input.shape();
  out_shape.back() = cout;
  bool rec = Recording({&input, &kernel});
  Value out = MakeResult(out_shape, rec);

  // im2col: one row per output frame, k*Cin columns.
  const int64_t rows = static_cast<int64_t>(batch) * frames;
  const int width = k * cin;
  auto col = std::make_shared<std::vector<double>>(rows * width, 0.0);
  const auto &x = input.data();
  for (int b = 0; b < batch; b++)
    for (int t = 0; t < frames; t++) {
      double *dst = col->data() + (static_cast<int64_t>(b) * frames + t) * width;
      for (int j = 0; j < k; j++) {
        int src_t = t + j * dilation - left_pad;
        if (src_t < 0 || src_t >= frames) continue;
        std::copy_n(x.data() + (static_cast<int64_t>(b) * frames + src_t) * cin,
                    cin, dst + j * cin);
      }
    }
  ConstMatMap cm(col->data(), rows, width);
  ConstMatMap wm(kernel.data().data(), width, cout);
  MatMap om(out.data().data(), rows, cout);
  om.noalias() = cm * wm;
  CheckFinite(out, "conv1d");
  if (rec) {
    Record([input, kernel, out, col, rows, width, cout, batch, frames, k, cin,
            dilation, left_pad]() mutable {
      ConstMatMap gm(out.grad().data(), rows, cout);
      if (kernel.requires_grad()) {
        MatMap gw(kernel.grad().data(), width, cout);
        ConstMatMap cm(col->data(), rows, width);
        gw.noalias() += cm.transpose() * gm;
      }
      if (input.requires_grad()) {
        ConstMatMap wm(kernel.data().data(), width, cout);
        RowMatrix gcol = gm * wm.transpose();
        auto &gx = input.grad();
        for (int b = 0; b < batch; b++)
          for (int t = 0; t < frames; t++) {
            const double *src = gcol.data() + (static_cast<int64_t>(b) * frames + t) * width;
            for (int j = 0; j < k; j++) {
              int src_t = t + j * dilation - left_pad;
              if (src_t < 0 || src_t >= frames) continue;
              double *dst = gx.data() + (static_cast<int64_t>(b) * frames + src_t) * cin;
              for (int c = 0; c < cin; c++) dst[c] += src[j * cin + c];
            }
          }
      }
    });
  }
  return out;
}

Value Glu(const Value &input) {
  const int channels = input.last_dim();
  if (channels % 2 != 0)
    throw Error(fmt::format("glu: odd channel count {}", channels));
  const int half = channels / 2;
  const int64_t rows = input.numel() / channels;
  Shape out_shape = input.shape();
  out_shape.back() = half;
  bool rec = Recording({&input});
  Value out = MakeResult(out_shape, rec);
  std::vector<double> gate(rows * half);
  const auto &x = input.data();
  auto &z = out.data();
  for (int64_t r = 0; r < rows; r++)
    for (int c = 0; c < half; c++) {
      double g = x[r * channels + half + c];
      double s = g >= 0.0 ? 1.0 / (1.0 + std::exp(-g))
                          : std::exp(g) / (1.0 + std::exp(g));
      gate[r * half + c] = s;
      z[r * half + c] = x[r * channels + c] * s;
    }
  CheckFinite(out, "glu");
  if (rec) {
    Record([input, out, gate, rows, half, channels]() mutable {
      const auto &g = out.grad();
      const auto &x = input.data();
      auto &gx = input.grad();
      for (int64_t r = 0; r < rows; r++)
        for (int c = 0; c < half; c++) {
          double s = gate[r * half + c];
          double go = g[r * half + c];
          gx[r * channels + c] += go * s;
          gx[r * channels + half + c] += go * x[r * channels + c] * s * (1.0 - s);
        }
    });
  }
  return out;
}

Value StopGradient(const Value &v) {
  return Value::FromData(v.shape(), InterceptFrozen(v.data()));
}

Value StraightThrough(const Value &h, const Value &q) {
  if (h.shape() != q.shape())
    throw Error(fmt::format("straight_through: shape mismatch {} vs {}",
                            ShapeString(h.shape()), ShapeString(q.shape())));
  const auto &x = h.data();
  const auto &y = q.data();
  std::vector<double> diff(x.size());
  for (size_t i = 0; i < x.size(); i++) diff[i] = y[i] - x[i];
  std::vector<double> offset = InterceptFrozen(diff);
  bool rec = Recording({&h});
  Value out = MakeResult(h.shape(), rec);
  auto &z = out.data();
  // Unless a replayed offset is in effect the value is q itself, not the
  // rounded h + (q - h).
  for (size_t i = 0; i < x.size(); i++)
    z[i] = offset[i] == diff[i] ? y[i] : x[i] + offset[i];
  if (rec) {
    Record([h, out]() mutable {
      auto &gh = h.grad();
      const auto &g = out.grad();
      for (size_t i = 0; i < g.size(); i++) gh[i] += g[i];
    });
  }
  return out;
}

Value GradientReversal(const Value &v, double lambda) {
  if (!std::isfinite(lambda)) throw Error("gradient_reversal: lambda not finite");
  bool rec = Recording({&v});
  Value out = MakeResult(v.shape(), rec);
  out.data() = v.data();
  if (rec) {
    Record([v, out, lambda]() mutable {
      auto &gv = v.grad();
      const auto &g = out.grad();
      for (size_t i = 0; i < g.size(); i++) gv[i] -= lambda * g[i];
    });
  }
  return out;
}

Value Magnitude(const Value &re, const Value &im, double floor) {
  if (re.shape() != im.shape())
    throw Error(fmt::format("magnitude: shape mismatch {} vs {}",
                            ShapeString(re.shape()), ShapeString(im.shape())));
  bool rec = Recording({&re, &im});
  Value out = MakeResult(re.shape(), rec);
  const auto &a = re.data();
  const auto &b = im.data();
  auto &z = out.data();
  for (int64_t i = 0; i < re.numel(); i++)
    z[i] = std::sqrt(std::max(a[i] * a[i] + b[i] * b[i], floor));
  CheckFinite(out, "magnitude");
  if (rec) {
    Record([re, im, out, floor]() mutable {
      const auto &g = out.grad();
      const auto &a = re.data();
      const auto &b = im.data();
      const auto &z = out.data();
      for (int64_t i = 0; i < re.numel(); i++) {
        if (a[i] * a[i] + b[i] * b[i] <= floor) continue;
        if (re.requires_grad()) re.grad()[i] += g[i] * a[i] / z[i];
        if (im.requires_grad()) im.grad()[i] += g[i] * b[i] / z[i];
      }
    });
  }
  return out;
}

}  // namespace ag
}  // namespace vqvc
