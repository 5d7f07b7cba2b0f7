/* Copyright 2026 The odeval Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ODEVAL_ERROR_H_
#define ODEVAL_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace odeval {

// Stable error codes. The CLI prints these verbatim, so renaming one is a
// breaking change for scripts parsing stderr.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kValidation,
  kUndefinedRecall,
  kNoSpeed,
  kSequencing,
  kLengthMismatch,
  kNoEligibleFrames,
  kUnknownInfraction,
  kDegenerateInput,
  kInsufficientSamples,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);
std::optional<ErrorCode> ErrorCodeFromName(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace odeval

#endif  // ODEVAL_ERROR_H_
