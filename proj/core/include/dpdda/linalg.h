// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPDDA_LINALG_H_
#define DPDDA_LINALG_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace dpdda {

using Vec = std::vector<double>;

// Dense row-major matrix. Sizes in this project are tiny (tens of rows), so
// products are plain triple loops in fixed index order, which keeps results
// bit-reproducible.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }

  double RowSum(std::size_t i) const;
  // Largest |row sum - 1| over all rows.
  double MaxRowStochasticError() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, std::span<const double> x);

// Writes the matrix as whitespace-separated rows, one per line.
void WriteDense(std::ostream& out, const Matrix& m);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm1(std::span<const double> a);
double Norm2(std::span<const double> a);
double MaxAbsDiff(std::span<const double> a, std::span<const double> b);

// out += scale * x
void Axpy(double scale, std::span<const double> x, std::span<double> out);

}  // namespace dpdda

#endif  // DPDDA_LINALG_H_
