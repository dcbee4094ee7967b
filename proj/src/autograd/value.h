// autograd/value.h

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

#ifndef VQVC_AUTOGRAD_VALUE_H_
#define VQVC_AUTOGRAD_VALUE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "base/vqvc-common.h"

namespace vqvc {
namespace ag {

using Shape = std::vector<int>;

int64_t NumElements(const Shape &shape);
std::string ShapeString(const Shape &shape);

// Storage for one tensor in the graph.  `grad` is allocated only when the
// node takes part in differentiation.
struct Node {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;
  bool requires_grad = false;
};

// Shared handle to a Node.  Copies alias the same storage.
class Value {
 public:
  Value() = default;

  static Value Zeros(const Shape &shape);
  static Value FromData(const Shape &shape, std::vector<double> data);
  static Value Scalar(double v);
  // Leaf that always carries a gradient buffer.
  static Value Parameter(const Shape &shape, std::vector<double> data);

  bool defined() const { return node_ != nullptr; }
  const Shape &shape() const { return node_->shape; }
  int rank() const { return static_cast<int>(node_->shape.size()); }
  int dim(int i) const;
  int64_t numel() const { return static_cast<int64_t>(node_->data.size()); }
  int last_dim() const { return node_->shape.empty() ? 1 : node_->shape.back(); }

  std::vector<double> &data() { return node_->data; }
  const std::vector<double> &data() const { return node_->data; }
  // Gradient storage is writable through any handle; backward closures
  // hold const copies of their inputs.
  std::vector<double> &grad() const { return node_->grad; }
  double item() const;

  bool requires_grad() const { return node_->requires_grad; }
  void ZeroGrad() const;
  bool SameNode(const Value &other) const { return node_ == other.node_; }

 private:
  explicit Value(std::shared_ptr<Node> node) : node_(std::move(node)) {}
  friend Value MakeResult(const Shape &shape, bool requires_grad);
  std::shared_ptr<Node> node_;
};

// Creates an op output; used by the op implementations.
Value MakeResult(const Shape &shape, bool requires_grad);

// Records backward closures in forward order and replays them in exact
// reverse order.  A tape belongs to one thread; ops see it through
// TapeScope.  Without an active tape, ops compute forward values only.
class Tape {
 public:
  void Record(std::function<void()> backward);
  // Seeds d(loss)/d(loss) = 1, runs every closure in reverse, then clears.
  void Backward(const Value &loss);
  void Clear() { entries_.clear(); }
  size_t NumEntries() const { return entries_.size(); }

 private:
  std::vector<std::function<void()>> entries_;
};

class TapeScope {
 public:
  explicit TapeScope(Tape *tape);
  ~TapeScope();
  TapeScope(const TapeScope &) = delete;
  TapeScope &operator=(const TapeScope &) = delete;

 private:
  Tape *previous_;
};

Tape *ActiveTape();

// Disables recording inside its lifetime (evaluation passes).
class NoGradScope {
 public:
  NoGradScope();
  ~NoGradScope();
  NoGradScope(const NoGradScope &) = delete;
  NoGradScope &operator=(const NoGradScope &) = delete;

 private:
  Tape *previous_;
};

// Values computed behind a stop-gradient (and the quantizer's argmin) can be
// captured on one pass and replayed verbatim on later passes.  The
// finite-difference checker uses this to differentiate the surrogate
// function that the backward pass actually implements.
class FrozenConstants {
 public:
  enum class Mode { kRecord, kReplay };
  explicit FrozenConstants(Mode mode = Mode::kRecord) : mode_(mode) {}
  void StartReplay() {
    mode_ = Mode::kReplay;
    cursor_ = 0;
  }
  void Rewind() { cursor_ = 0; }
  // Record mode stores `computed`; replay mode returns the stored value for
  // this site, checking that the size is unchanged.
  std::vector<double> Intercept(std::vector<double> computed);
  size_t NumSites() const { return sites_.size(); }

 private:
  Mode mode_;
  size_t cursor_ = 0;
  std::vector<std::vector<double>> sites_;
};

class FreezeScope {
 public:
  explicit FreezeScope(FrozenConstants *frozen);
  ~FreezeScope();
  FreezeScope(const FreezeScope &) = delete;
  FreezeScope &operator=(const FreezeScope &) = delete;

 private:
  FrozenConstants *previous_;
};

// Passes `computed` through the active FrozenConstants, if any.
std::vector<double> InterceptFrozen(std::vector<double> computed);

}  // namespace ag
}  // namespace vqvc

#endif  // VQVC_AUTOGRAD_VALUE_H_
