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

#include "ffkit/matrix_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ffkit/error.hpp"

namespace ffkit {

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(std::ostream &out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
    for (const auto &h : header) cell(h);
    end_row();
}

CsvWriter &CsvWriter::cell(double value) { return cell(format_number(value)); }

CsvWriter &CsvWriter::cell(long long value) { return cell(std::to_string(value)); }

CsvWriter &CsvWriter::cell(const std::string &value) {
    if (filled_ == columns_) fail(ErrorCode::invalid_input, "too many CSV cells in a row");
    if (filled_ > 0) out_ << ',';
    out_ << value;
    ++filled_;
    return *this;
}

void CsvWriter::end_row() {
    if (filled_ != columns_) fail(ErrorCode::invalid_input, "CSV row has the wrong number of cells");
    out_ << '\n';
    filled_ = 0;
}

void write_matrix_csv(std::ostream &out, const CMatrix &m) {
    CsvWriter csv(out, {"row", "col", "re", "im"});
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (m(i, j) == cplx(0.0)) continue;
            csv.cell(static_cast<long long>(i)).cell(static_cast<long long>(j));
            csv.cell(m(i, j).real()).cell(m(i, j).imag());
            csv.end_row();
        }
    }
}

CMatrix read_matrix_csv(std::istream &in, Eigen::Index rows, Eigen::Index cols) {
    CMatrix m = CMatrix::Zero(rows, cols);
    std::string line;
    if (!std::getline(in, line) || line != "row,col,re,im") fail(ErrorCode::invalid_input, "missing matrix CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        long long i = 0, j = 0;
        double re = 0.0, im = 0.0;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(fields >> i >> c1 >> j >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' || c3 != ',')
            fail(ErrorCode::invalid_input, "malformed matrix CSV line: " + line);
        if (i < 0 || i >= rows || j < 0 || j >= cols) fail(ErrorCode::invalid_input, "matrix CSV index out of range");
        m(i, j) = cplx(re, im);
    }
    return m;
}

}  // namespace ffkit
