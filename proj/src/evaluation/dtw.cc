// evaluation/dtw.cc

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

#include "evaluation/dtw.h"

#include <algorithm>
#include <limits>

namespace vqvc {

DtwPath Dtw(const RowMatrix &a, const RowMatrix &b, int first_dim, int dims) {
  const int t1 = static_cast<int>(a.rows()), t2 = static_cast<int>(b.rows());
  if (t1 == 0 || t2 == 0) throw Error("dtw: empty sequence");
  if (a.cols() != b.cols())
    throw Error(fmt::format("dtw: dimension mismatch {} vs {}", a.cols(), b.cols()));
  if (dims < 0) dims = static_cast<int>(a.cols()) - first_dim;
  if (first_dim < 0 || dims < 1 || first_dim + dims > a.cols())
    throw Error("dtw: bad dimension range");

  RowMatrix local(t1, t2);
  for (int i = 0; i < t1; i++)
    for (int j = 0; j < t2; j++)
      local(i, j) = (a.row(i).segment(first_dim, dims) -
                     b.row(j).segment(first_dim, dims)).squaredNorm();

  const double inf = std::numeric_limits<double>::infinity();
  RowMatrix acc = RowMatrix::Constant(t1, t2, inf);
  // 0 = diagonal, 1 = from (i-1, j), 2 = from (i, j-1)
  std::vector<uint8_t> back(size_t(t1) * t2, 0);
  for (int i = 0; i < t1; i++) {
    for (int j = 0; j < t2; j++) {
      if (i == 0 && j == 0) {
        acc(0, 0) = local(0, 0);
        continue;
      }
      double best = inf;
      uint8_t from = 0;
      if (i > 0 && j > 0) best = acc(i - 1, j - 1);
      if (i > 0 && acc(i - 1, j) < best) {
        best = acc(i - 1, j);
        from = 1;
      }
      if (j > 0 && acc(i, j - 1) < best) {
        best = acc(i, j - 1);
        from = 2;
      }
      acc(i, j) = best + local(i, j);
      back[size_t(i) * t2 + j] = from;
    }
  }
  DtwPath p;
  int i = t1 - 1, j = t2 - 1;
  while (true) {
    p.steps.push_back({i, j});
    if (i == 0 && j == 0) break;
    uint8_t from = back[size_t(i) * t2 + j];
    if (from == 0) {
      i--;
      j--;
    } else if (from == 1) {
      i--;
    } else {
      j--;
    }
  }
  std::reverse(p.steps.begin(), p.steps.end());
  p.cost = 0.0;
  for (auto [x, y] : p.steps) p.cost += local(x, y);
  return p;
}

bool IsValidDtwPath(const DtwPath &p, int t1, int t2) {
  if (p.steps.empty() || p.steps.front() != std::make_pair(0, 0) ||
      p.steps.back() != std::make_pair(t1 - 1, t2 - 1))
    return false;
  for (size_t k = 1; k < p.steps.size(); k++) {
    int di = p.steps[k].first - p.steps[k - 1].first;
    int dj = p.steps[k].second - p.steps[k - 1].second;
    if (di < 0 || dj < 0 || di > 1 || dj > 1 || (di == 0 && dj == 0)) return false;
  }
  return true;
}

}  // namespace vqvc
