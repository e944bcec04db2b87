/******************************************************************************
 * Copyright 2026 The Panocam Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace panocam {

// Mirrors pc_status in the C header; keep the numeric values in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kIo = 3,
  kParse = 4,
  kSchema = 5,
  kDegenerateData = 6,
  kIncomplete = 7,
  kState = 8,
  kNotFound = 9,
  kConflict = 10,
  kInternal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

using WarningHandler = std::function<void(const std::string&)>;

/// Installs the process-wide warning sink and returns the previous one.
/// The default handler prints to stderr. Passing an empty handler restores it.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& message);

}  // namespace panocam
