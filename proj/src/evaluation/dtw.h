// evaluation/dtw.h

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

#ifndef VQVC_EVALUATION_DTW_H_
#define VQVC_EVALUATION_DTW_H_

#include <utility>
#include <vector>

#include "base/vqvc-common.h"

namespace vqvc {

struct DtwPath {
  std::vector<std::pair<int, int>> steps;  // (i, j), from (0,0) to (T1-1, T2-1)
  double cost = 0.0;                       // sum of local distances on the path
};

// Minimum-cost monotone alignment with steps (1,0), (0,1), (1,1) and
// squared Euclidean local distance.  Columns [first_dim, first_dim + dims)
// are compared (dims < 0 means through the last column).  Ties prefer the
// diagonal, then (1,0).
DtwPath Dtw(const RowMatrix &a, const RowMatrix &b, int first_dim = 0,
            int dims = -1);

// True if `p` is a valid path for lengths (t1, t2).
bool IsValidDtwPath(const DtwPath &p, int t1, int t2);

}  // namespace vqvc

#endif  // VQVC_EVALUATION_DTW_H_
