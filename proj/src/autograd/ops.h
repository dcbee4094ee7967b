// autograd/ops.h

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

#ifndef VQVC_AUTOGRAD_OPS_H_
#define VQVC_AUTOGRAD_OPS_H_

#include <span>
#include <vector>

#include "autograd/value.h"

namespace vqvc {
namespace ag {

// Binary elementwise ops.  `b` may broadcast against `a` when it is a scalar
// or when its shape equals the trailing dimensions of `a` (e.g. a bias row).
Value Add(const Value &a, const Value &b);
Value Sub(const Value &a, const Value &b);
Value Mul(const Value &a, const Value &b);
Value Div(const Value &a, const Value &b);

Value Scale(const Value &a, double s);
Value AddScalar(const Value &a, double s);

Value Square(const Value &a);
Value Abs(const Value &a);  // d|x|/dx at 0 is taken as 0
Value Exp(const Value &a);
Value Log(const Value &a);
Value Sqrt(const Value &a);  // gradient at 0 is taken as 0
Value Sigmoid(const Value &a);
Value Tanh(const Value &a);
Value Relu(const Value &a);

Value Sum(const Value &a);   // -> [1]
Value Mean(const Value &a);  // -> [1]
// Mean over one axis; the axis is removed from the shape.
Value MeanAxis(const Value &a, int axis);

// a [..., K] times w [K, N] -> [..., N].
Value MatMul(const Value &a, const Value &w);

Value Reshape(const Value &a, const Shape &shape);
// Swaps the two innermost axes: [..., M, N] -> [..., N, M].
Value SwapLastAxes(const Value &a);
Value Concat(const std::vector<Value> &parts, int axis);
Value Slice(const Value &a, int axis, int start, int length);

// Rows of table [N, D] gathered by index; output shape is prefix + [D] where
// prefix holds indices.size() elements.
Value EmbeddingLookup(const Value &table, std::span<const int> indices,
                      const Shape &prefix);

// Mean softmax cross-entropy of logits [N, C] (or [C]) against class ids.
Value SoftmaxCrossEntropy(const Value &logits, std::span<const int> classes);

// Dilated 1-D convolution over time.  input [T, Cin] or [B, T, Cin]; kernel
// [k, Cin, Cout].  Causal pads (k-1)*d zeros on the left; otherwise the same
// total padding is split with the extra frame on the right.  Output length
// equals input length.
Value Conv1dDilated(const Value &input, const Value &kernel, int dilation,
                    bool causal);

// [..., 2C] -> [..., C]: first half times sigmoid(second half).
Value Glu(const Value &input);

// Forward identity, no gradient to the input.
Value StopGradient(const Value &v);

// Value q, gradient passed to h unchanged: h + stop_gradient(q - h) without
// the rounding.  q receives no gradient.
Value StraightThrough(const Value &h, const Value &q);

// Forward identity, backward multiplies the incoming gradient by -lambda.
Value GradientReversal(const Value &v, double lambda);

// sqrt(max(re^2 + im^2, floor)), zero gradient inside the floor.
Value Magnitude(const Value &re, const Value &im, double floor);

// Turns on the per-op finite check (also enabled by VQVC_LOG=debug).
void SetNanCheck(bool enabled);

}  // namespace ag
}  // namespace vqvc

#endif  // VQVC_AUTOGRAD_OPS_H_
