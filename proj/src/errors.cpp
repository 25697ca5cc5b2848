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


#include "sphtan/errors.h"

namespace sphtan {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kAllCoefficientsZero: return "AllCoefficientsZero";
    case Errc::kCoincidentPoints: return "CoincidentPoints";
    case Errc::kLineAtInfinity: return "LineAtInfinity";
    case Errc::kIdenticalSections: return "IdenticalSections";
    case Errc::kDegenerateInput: return "DegenerateInput";
    case Errc::kIdenticalCones: return "IdenticalCones";
    case Errc::kPointOnSphere: return "PointOnSphere";
    case Errc::kSpecialPoint: return "SpecialPoint";
    case Errc::kForbiddenRatio: return "ForbiddenRatio";
    case Errc::kNonSquareRatio: return "NonSquareRatio";
    case Errc::kNotOnSphere: return "NotOnSphere";
    case Errc::kSpecialLine: return "SpecialLine";
    case Errc::kDegenerateScene: return "DegenerateScene";
    case Errc::kEmptyMesh: return "EmptyMesh";
    case Errc::kParseError: return "ParseError";
    case Errc::kValidationError: return "ValidationError";
    case Errc::kIoError: return "IoError";
  }
  return "UnknownError";
}

ErrorClass error_class(Errc code) {
  switch (code) {
    case Errc::kParseError:
    case Errc::kValidationError:
    case Errc::kForbiddenRatio:
    case Errc::kNonSquareRatio:
    case Errc::kNotOnSphere:
    case Errc::kCoincidentPoints:
      return ErrorClass::kValidation;
    case Errc::kIoError:
      return ErrorClass::kIo;
    default:
      return ErrorClass::kDegenerate;
  }
}

}  // namespace sphtan
