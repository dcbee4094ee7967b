// autograd/parameters.cc

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

#include "autograd/parameters.h"

#include <cstring>

namespace vqvc {
namespace ag {

Value ParameterStore::Add(const std::string &name, const Shape &shape,
                          std::vector<double> init) {
  if (Contains(name)) throw Error("duplicate parameter name " + name);
  Value v = Value::Parameter(shape, std::move(init));
  entries_.emplace_back(name, v);
  return v;
}

Value ParameterStore::AddUniform(const std::string &name, const Shape &shape,
                                 double bound, std::mt19937_64 *rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> init(NumElements(shape));
  for (double &x : init) x = dist(*rng);
  return Add(name, shape, std::move(init));
}

Value ParameterStore::AddZeros(const std::string &name, const Shape &shape) {
  return Add(name, shape, std::vector<double>(NumElements(shape), 0.0));
}

const Value &ParameterStore::Get(const std::string &name) const {
  for (const auto &e : entries_)
    if (e.first == name) return e.second;
  throw Error("unknown parameter " + name);
}

bool ParameterStore::Contains(const std::string &name) const {
  for (const auto &e : entries_)
    if (e.first == name) return true;
  return false;
}

int64_t ParameterStore::NumParameters() const {
  int64_t n = 0;
  for (const auto &e : entries_) n += e.second.numel();
  return n;
}

void ParameterStore::ZeroGrad() const {
  for (const auto &e : entries_) e.second.ZeroGrad();
}

std::vector<NamedTensor> ParameterStore::Export() const {
  std::vector<NamedTensor> out;
  out.reserve(entries_.size());
  for (const auto &[name, v] : entries_) {
    NamedTensor t;
    t.name = name;
    t.shape = v.shape();
    t.data.assign(v.data().begin(), v.data().end());
    out.push_back(std::move(t));
  }
  return out;
}

void ParameterStore::Import(const std::vector<NamedTensor> &tensors) {
  for (auto &[name, v] : entries_) {
    const NamedTensor *t = FindTensor(tensors, name);
    if (t == nullptr) throw Error("checkpoint is missing parameter " + name);
    if (t->shape != v.shape())
      throw Error(fmt::format("checkpoint parameter {} has shape {}, expected {}",
                              name, ShapeString(t->shape),
                              ShapeString(v.shape())));
    for (size_t i = 0; i < t->data.size(); i++) v.data()[i] = t->data[i];
  }
}

uint64_t ParameterStore::Checksum() const {
  uint64_t h = 0x12345678ULL;
  for (const auto &e : entries_)
    for (double x : e.second.data()) {
      uint64_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      h = MixSeed(h, bits);
    }
  return h;
}

}  // namespace ag
}  // namespace vqvc
