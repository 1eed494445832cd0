// Copyright 2026 The mbqc-ft Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace mbqc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MBQC_DEFINE_ERROR(Name)        \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  };

MBQC_DEFINE_ERROR(BindingMismatch)
MBQC_DEFINE_ERROR(UnknownName)
MBQC_DEFINE_ERROR(NotAdjacent)
MBQC_DEFINE_ERROR(NotStandardized)
MBQC_DEFINE_ERROR(DimensionMismatch)
MBQC_DEFINE_ERROR(TooManyBranches)
MBQC_DEFINE_ERROR(NotDeterministic)
MBQC_DEFINE_ERROR(NonClifford)
MBQC_DEFINE_ERROR(ForcedOutcomeImpossible)
MBQC_DEFINE_ERROR(NotPMM)
MBQC_DEFINE_ERROR(NonCliffordDependency)
MBQC_DEFINE_ERROR(InsufficientFailures)
MBQC_DEFINE_ERROR(ParseError)
MBQC_DEFINE_ERROR(InvalidPattern)

#undef MBQC_DEFINE_ERROR

}  // namespace mbqc
