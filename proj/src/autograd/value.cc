// autograd/value.cc

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

#include "autograd/value.h"

#include <algorithm>
#include <sstream>

namespace vqvc {
namespace ag {

namespace {
thread_local Tape *g_active_tape = nullptr;
thread_local FrozenConstants *g_frozen = nullptr;
}  // namespace

int64_t NumElements(const Shape &shape) {
  int64_t n = 1;
  for (int d : shape) n *= d;
  return n;
}

std::string ShapeString(const Shape &shape) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < shape.size(); i++) os << (i ? "," : "") << shape[i];
  os << "]";
  return os.str();
}

Value MakeResult(const Shape &shape, bool requires_grad) {
  auto node = std::make_shared<Node>();
  node->shape = shape;
  node->data.assign(NumElements(shape), 0.0);
  node->requires_grad = requires_grad;
  if (requires_grad) node->grad.assign(node->data.size(), 0.0);
  return Value(std::move(node));
}

Value Value::Zeros(const Shape &shape) { return MakeResult(shape, false); }

Value Value::FromData(const Shape &shape, std::vector<double> data) {
  if (static_cast<int64_t>(data.size()) != NumElements(shape))
    throw Error(fmt::format("Value::FromData: {} values for shape {}",
                            data.size(), ShapeString(shape)));
  Value v = MakeResult(shape, false);
  v.data() = std::move(data);
  return v;
}

Value Value::Scalar(double v) { return FromData({1}, {v}); }

Value Value::Parameter(const Shape &shape, std::vector<double> data) {
  Value v = FromData(shape, std::move(data));
  v.node_->requires_grad = true;
  v.node_->grad.assign(v.node_->data.size(), 0.0);
  return v;
}

int Value::dim(int i) const {
  int r = rank();
  if (i < 0) i += r;
  if (i < 0 || i >= r)
    throw Error(fmt::format("dim {} out of range for shape {}", i,
                            ShapeString(shape())));
  return node_->shape[i];
}

double Value::item() const {
  if (numel() != 1)
    throw Error("item() on non-scalar of shape " + ShapeString(shape()));
  return node_->data[0];
}

void Value::ZeroGrad() const {
  std::fill(node_->grad.begin(), node_->grad.end(), 0.0);
}

void Tape::Record(std::function<void()> backward) {
  entries_.push_back(std::move(backward));
}

void Tape::Backward(const Value &loss) {
  if (loss.numel() != 1)
    throw Error("backward: loss must be a scalar, got shape " +
                ShapeString(loss.shape()));
  if (!loss.requires_grad()) {
    entries_.clear();
    return;
  }
  loss.grad()[0] += 1.0;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) (*it)();
  entries_.clear();
}

TapeScope::TapeScope(Tape *tape) : previous_(g_active_tape) {
  g_active_tape = tape;
}
TapeScope::~TapeScope() { g_active_tape = previous_; }

Tape *ActiveTape() { return g_active_tape; }

NoGradScope::NoGradScope() : previous_(g_active_tape) {
  g_active_tape = nullptr;
}
NoGradScope::~NoGradScope() { g_active_tape = previous_; }

std::vector<double> FrozenConstants::Intercept(std::vector<double> computed) {
  if (mode_ == Mode::kRecord) {
    sites_.push_back(computed);
    return computed;
  }
  if (cursor_ >= sites_.size())
    throw Error("frozen constants: replay visited more sites than recorded");
  const std::vector<double> &stored = sites_[cursor_++];
  if (stored.size() != computed.size())
    throw Error("frozen constants: site size changed between passes");
  return stored;
}

FreezeScope::FreezeScope(FrozenConstants *frozen) : previous_(g_frozen) {
  g_frozen = frozen;
}
FreezeScope::~FreezeScope() { g_frozen = previous_; }

std::vector<double> InterceptFrozen(std::vector<double> computed) {
  if (g_frozen == nullptr) return computed;
  return g_frozen->Intercept(std::move(computed));
}

}  // namespace ag
}  // namespace vqvc
