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

#ifndef BEAMSEL_EXAMPLE_REPORT_H_
#define BEAMSEL_EXAMPLE_REPORT_H_

#include <ostream>

namespace beamsel {

// Prints the four-agent counterexample (E/Var/total error table over the
// 3-subsets, and the greedy, DLG and oracle answers at threshold 3.3) and
// the five-agent threshold flip between 2.4 and 2.5.
void WriteExampleReport(std::ostream& out);

}  // namespace beamsel

#endif  // BEAMSEL_EXAMPLE_REPORT_H_
