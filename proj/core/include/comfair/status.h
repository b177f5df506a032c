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

#ifndef COMFAIR_STATUS_H_
#define COMFAIR_STATUS_H_

#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace comfair {

// Errors carry a stable kind tag as the message prefix ("Kind: detail") so
// callers and tests can match on the kind without parsing free text. The
// status code decides how the CLI classifies the failure:
//   kInvalidArgument                                   -> configuration error
//   kNotFound, kDataLoss, kOutOfRange, kFailedPrecondition -> data error
//   anything else                                      -> internal error
inline absl::Status MakeError(absl::StatusCode code, absl::string_view kind,
                              absl::string_view detail) {
  return absl::Status(code, absl::StrCat(kind, ": ", detail));
}

inline absl::Status ConfigError(absl::string_view kind,
                                absl::string_view detail) {
  return MakeError(absl::StatusCode::kInvalidArgument, kind, detail);
}

inline absl::Status DataError(absl::string_view kind,
                              absl::string_view detail) {
  return MakeError(absl::StatusCode::kDataLoss, kind, detail);
}

inline absl::Status PreconditionError(absl::string_view kind,
                                      absl::string_view detail) {
  return MakeError(absl::StatusCode::kFailedPrecondition, kind, detail);
}

// Returns the kind tag of an error produced by MakeError, or the empty
// string for OK / untagged statuses.
inline std::string ErrorKind(const absl::Status& status) {
  if (status.ok()) return "";
  absl::string_view message = status.message();
  const size_t colon = message.find(": ");
  if (colon == absl::string_view::npos) return "";
  return std::string(message.substr(0, colon));
}

}  // namespace comfair

#define COMFAIR_STATUS_CONCAT_INNER_(a, b) a##b
#define COMFAIR_STATUS_CONCAT_(a, b) COMFAIR_STATUS_CONCAT_INNER_(a, b)

#define COMFAIR_RETURN_IF_ERROR(expr)              \
  do {                                             \
    ::absl::Status _comfair_status = (expr);       \
    if (!_comfair_status.ok()) return _comfair_status; \
  } while (0)

#define COMFAIR_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                   \
  if (!tmp.ok()) return tmp.status();                  \
  lhs = std::move(*tmp)

#define COMFAIR_ASSIGN_OR_RETURN(lhs, expr) \
  COMFAIR_ASSIGN_OR_RETURN_IMPL_(           \
      COMFAIR_STATUS_CONCAT_(_comfair_statusor_, __LINE__), lhs, expr)

#endif  // COMFAIR_STATUS_H_
