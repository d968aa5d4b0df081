//
// Copyright 2026 The Corrgauss Authors
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
//

#ifndef CORRGAUSS_ERROR_H_
#define CORRGAUSS_ERROR_H_

#include <stdexcept>
#include <string>

namespace corrgauss {

enum class ErrorCode {
  kInvalidArgument = 1,
  kParseError,
  kRaggedRow,
  kOutOfRange,
  kEmptyInput,
  kBadGroupIndex,
  kNegativeVariance,
  kNonPositiveSensitivity,
  kNonPositiveC,
  kNonPositiveInput,
  kOutOfBracket,
  kDimensionTooLarge,
  kSingularMatrix,
};

// Every failure in the library surfaces as this exception. The C API maps
// `code()` onto its status enum one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace corrgauss

#endif  // CORRGAUSS_ERROR_H_
