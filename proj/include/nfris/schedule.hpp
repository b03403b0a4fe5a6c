// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>

#include "nfris/array.hpp"

namespace nfris {

// Four unit-modulus RIS profiles, each repeated allocations[i] times.
struct ProfileSchedule {
  std::array<CVector, 4> beams;
  std::array<int, 4> allocations{};
  int total_T = 0;
};

}  // namespace nfris
