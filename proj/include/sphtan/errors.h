// Copyright 2026 The sphtan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPHTAN_ERRORS_H_
#define SPHTAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sphtan {

// Every failure the core can report. The C API folds these into the coarse
// status codes of sphtan.h via error_class().
enum class Errc {
  kAllCoefficientsZero,
  kCoincidentPoints,
  kLineAtInfinity,
  kIdenticalSections,
  kDegenerateInput,
  kIdenticalCones,
  kPointOnSphere,
  kSpecialPoint,
  kForbiddenRatio,
  kNonSquareRatio,
  kNotOnSphere,
  kSpecialLine,
  kDegenerateScene,
  kEmptyMesh,
  kParseError,
  kValidationError,
  kIoError,
};

enum class ErrorClass { kValidation, kDegenerate, kIo };

const char* errc_name(Errc code);
ErrorClass error_class(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sphtan

#endif  // SPHTAN_ERRORS_H_
