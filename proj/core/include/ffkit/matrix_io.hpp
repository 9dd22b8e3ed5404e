// Copyright 2026 The ffkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ffkit/linalg.hpp"

namespace ffkit {

/// Shortest-round-trip decimal with 17 significant digits ("%.17g").
std::string format_number(double value);

/// Writes comma-separated rows; every double goes through format_number.
class CsvWriter {
  public:
    CsvWriter(std::ostream &out, std::vector<std::string> header);

    CsvWriter &cell(double value);
    CsvWriter &cell(long long value);
    CsvWriter &cell(int value) { return cell(static_cast<long long>(value)); }
    CsvWriter &cell(const std::string &value);
    void end_row();

  private:
    std::ostream &out_;
    std::size_t columns_;
    std::size_t filled_ = 0;
};

/// Sparse listing "row,col,re,im" of the entries of m.
void write_matrix_csv(std::ostream &out, const CMatrix &m);
CMatrix read_matrix_csv(std::istream &in, Eigen::Index rows, Eigen::Index cols);

}  // namespace ffkit
