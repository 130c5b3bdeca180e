// Copyright 2026 The Beamsel Authors.
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

#include "beamsel/error.h"

namespace beamsel {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return "input-error";
    case ErrorKind::kModel:
      return "model-error";
    case ErrorKind::kGeometry:
      return "geometry-error";
    case ErrorKind::kDegenerate:
      return "degenerate-distribution";
    case ErrorKind::kInfeasible:
      return "infeasible";
    case ErrorKind::kSize:
      return "size-error";
    case ErrorKind::kNotConverged:
      return "ds-not-converged";
    case ErrorKind::kParse:
      return "parse-error";
    case ErrorKind::kValidation:
      return "validation-error";
  }
  return "unknown-error";
}

}  // namespace beamsel
