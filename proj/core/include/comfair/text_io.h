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

#ifndef COMFAIR_TEXT_IO_H_
#define COMFAIR_TEXT_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "comfair/types.h"

namespace comfair {

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view contents);

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

bool ParseDouble(absl::string_view text, double* value);
bool ParseInt64(absl::string_view text, int64_t* value);

// Lines of `contents` with trailing '\r' stripped. A final newline does not
// produce an empty trailing line.
std::vector<absl::string_view> SplitLines(absl::string_view contents);

// Headerless CSV, one row per matrix row.
std::string MatrixToCsv(const Matrix& matrix);
absl::StatusOr<Matrix> MatrixFromCsv(absl::string_view csv);

// CRC-32 (zlib polynomial) as 8 lowercase hex digits.
std::string Crc32Hex(absl::string_view bytes);

}  // namespace comfair

#endif  // COMFAIR_TEXT_IO_H_
