// Copyright 2026 The adcue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adcue/nn/matrix.h"

#include <algorithm>
#include <cmath>

#include "adcue/error.h"

namespace adcue::nn {

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const size_t n_rows = rows.size();
  const size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
  Matrix m(n_rows, n_cols);
  size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != n_cols) throw DimensionError("FromRows: ragged rows");
    std::copy(row.begin(), row.end(), m.row(r++).begin());
  }
  return m;
}

Matrix Matrix::RowVector(std::span<const double> values) {
  Matrix m(1, values.size());
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

void Matrix::Fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::string Matrix::ShapeString() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void CheckShape(bool ok, const std::string& what, const Matrix& a, const Matrix& b) {
  if (!ok) {
    throw DimensionError(what + ": " + a.ShapeString() + " vs " + b.ShapeString());
  }
}

}  // namespace adcue::nn
