/* Copyright 2026 The qkdlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qkdlab/csv.hpp"

#include "qkdlab/errors.hpp"

#include <fmt/format.h>

#include <fstream>
#include <stdexcept>

namespace qkdlab {

std::string format_real(double x) { return fmt::format("{:.6g}", x); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument(
        fmt::format("row has {} columns, header has {}", row.size(), header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out = fmt::format("{}\n", fmt::join(header_, ","));
  for (const auto& row : rows_) {
    out += fmt::format("{}\n", fmt::join(row, ","));
  }
  return out;
}

void write_output(const std::filesystem::path& path, std::string_view contents,
                  std::ostream& console) {
  if (path == "-") {
    console << contents;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  }
  out << contents;
  out.close();
  if (!out) {
    throw IoError(fmt::format("failed writing '{}'", path.string()));
  }
}

}  // namespace qkdlab
