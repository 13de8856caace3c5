// Copyright 2026 The phonia authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONIA_MATRIX_HPP_
#define PHONIA_MATRIX_HPP_

#include <string>
#include <vector>

namespace phonia {

// Dense labelled feature matrix; imputation has already happened by the
// time one of these exists (selectors and the forest require no missing
// values). labels are 0/1 with 1 the positive class.
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::string> subject_ids;
  std::vector<std::string> feature_names;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_features() const {
    return rows.empty() ? feature_names.size() : rows[0].size();
  }
};

// Column-standardized copy (zero mean, unit variance). Columns with zero
// variance are left at zero and reported through `degenerate`.
std::vector<std::vector<double>> standardized_columns(
    const FeatureMatrix& m, std::vector<int>* degenerate = nullptr);

}  // namespace phonia

#endif  // PHONIA_MATRIX_HPP_
