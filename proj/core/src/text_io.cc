// Copyright 2026 The ComFair Authors
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

#include "comfair/text_io.h"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "comfair/status.h"

namespace comfair {

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(absl::StatusCode::kNotFound, "FileNotFound", path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(absl::StatusCode::kPermissionDenied, "WriteFailed", path);
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    return MakeError(absl::StatusCode::kInternal, "WriteFailed", path);
  }
  return absl::OkStatus();
}

std::string FormatDouble(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) return absl::StrFormat("%.17g", value);
  return std::string(buffer, end);
}

bool ParseDouble(absl::string_view text, double* value) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool ParseInt64(absl::string_view text, int64_t* value) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<absl::string_view> SplitLines(absl::string_view contents) {
  std::vector<absl::string_view> lines;
  size_t start = 0;
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == absl::string_view::npos) end = contents.size();
    absl::string_view line = contents.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string MatrixToCsv(const Matrix& matrix) {
  std::string out;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out.push_back(',');
      out += FormatDouble(matrix(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<Matrix> MatrixFromCsv(absl::string_view csv) {
  std::vector<double> values;
  Eigen::Index cols = -1;
  Eigen::Index rows = 0;
  size_t line_no = 0;
  for (absl::string_view line : SplitLines(csv)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (cols < 0) cols = static_cast<Eigen::Index>(fields.size());
    if (static_cast<Eigen::Index>(fields.size()) != cols) {
      return DataError("MalformedLine",
                       absl::StrCat("matrix line ", line_no, ": ragged row"));
    }
    for (absl::string_view field : fields) {
      double value = 0.0;
      if (!ParseDouble(field, &value)) {
        return DataError("MalformedLine",
                         absl::StrCat("matrix line ", line_no,
                                      ": unparsable number"));
      }
      values.push_back(value);
    }
    ++rows;
  }
  Matrix matrix(rows, std::max<Eigen::Index>(cols, 0));
  for (size_t i = 0; i < values.size(); ++i) matrix.data()[i] = values[i];
  return matrix;
}

std::string Crc32Hex(absl::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large inputs in chunks.
  const char* data = bytes.data();
  size_t remaining = bytes.size();
  while (remaining > 0) {
    const uInt chunk =
        static_cast<uInt>(std::min<size_t>(remaining, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data), chunk);
    data += chunk;
    remaining -= chunk;
  }
  return absl::StrFormat("%08x", static_cast<uint32_t>(crc));
}

}  // namespace comfair
