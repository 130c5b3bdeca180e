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

#ifndef BEAMSEL_ERROR_H_
#define BEAMSEL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace beamsel {

enum class ErrorKind {
  kInput,          // out-of-range index, bad argument
  kModel,          // covariance not symmetric / not PSD
  kGeometry,       // zero-norm client position, bad wavelength
  kDegenerate,     // point-mass distribution where a density is required
  kInfeasible,     // threshold above the maximum expected gain
  kSize,           // enumeration guard exceeded
  kNotConverged,   // DS ran out of outer iterations
  kParse,          // malformed document
  kValidation,     // well-formed document violating an invariant
};

std::string_view ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace beamsel

#endif  // BEAMSEL_ERROR_H_
