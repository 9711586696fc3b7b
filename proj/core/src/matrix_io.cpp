// Copyright 2026 The gbs-phase-space Authors
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

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbs/error.hpp"
#include "gbs/network.hpp"

namespace gbs {

namespace {

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text, const std::string &where) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        fail(ErrorCode::data, where + ": cannot parse number '" + std::string(text) + "'");
    return value;
}

}  // namespace

ComplexMatrix read_matrix_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open matrix file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::data, path + ": " + e.what());
    }
    try {
        const auto rows = doc.at("m").get<Eigen::Index>();
        const auto cols = doc.at("n").get<Eigen::Index>();
        const auto re = doc.at("re").get<std::vector<double>>();
        const auto im = doc.at("im").get<std::vector<double>>();
        if (rows < 1 || cols < 1) fail(ErrorCode::data, path + ": matrix dimensions must be positive");
        const auto size = static_cast<std::size_t>(rows * cols);
        if (re.size() != size || im.size() != size)
            fail(ErrorCode::data, path + ": re/im arrays must hold m*n entries");
        ComplexMatrix out(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) {
                const auto k = static_cast<std::size_t>(i * cols + j);
                out(i, j) = Complex(re[k], im[k]);
            }
        return out;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::data, path + ": " + e.what());
    }
}

void write_matrix_json(const std::string &path, const ComplexMatrix &matrix) {
    nlohmann::json doc;
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(matrix.size()));
    im.reserve(static_cast<std::size_t>(matrix.size()));
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            re.push_back(matrix(i, j).real());
            im.push_back(matrix(i, j).imag());
        }
    doc["m"] = matrix.rows();
    doc["n"] = matrix.cols();
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot write matrix file " + path);
    out << doc.dump() << '\n';
}

ComplexMatrix read_matrix_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open matrix file " + path);
    std::vector<std::vector<Complex>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        std::vector<double> values;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            const auto field = std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            values.push_back(parse_double(field, path + ":" + std::to_string(line_no)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (values.size() % 2 != 0)
            fail(ErrorCode::data, path + ":" + std::to_string(line_no) + ": expected alternating re,im columns");
        std::vector<Complex> row;
        for (std::size_t k = 0; k < values.size(); k += 2) row.emplace_back(values[k], values[k + 1]);
        if (!rows.empty() && row.size() != rows.front().size())
            fail(ErrorCode::data, path + ":" + std::to_string(line_no) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(ErrorCode::data, path + ": empty matrix file");
    ComplexMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return out;
}

void write_matrix_csv(const std::string &path, const ComplexMatrix &matrix) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot write matrix file " + path);
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(matrix(i, j).real()) << ',' << format_double(matrix(i, j).imag());
        }
        out << '\n';
    }
}

ComplexMatrix read_matrix(const std::string &path) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return read_matrix_json(path);
    return read_matrix_csv(path);
}

}  // namespace gbs
