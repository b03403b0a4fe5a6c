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

#include <stdexcept>
#include <string>

namespace nfris {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Position on a coordinate singularity (origin, z-axis, on top of an element).
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

// Matrix or vector dimensions inconsistent with the scenario.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class InvalidStep : public Error {
 public:
  using Error::Error;
};

// Beam basis loses rank (a derivative beam is colinear with earlier columns).
class BasisDegenerate : public Error {
 public:
  using Error::Error;
};

// Dense full-covariance solve requested for an array that is too large.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ScheduleError : public Error {
 public:
  using Error::Error;
};

class InvalidBeam : public Error {
 public:
  using Error::Error;
};

// Scenario configuration could not be loaded; the message names the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nfris
