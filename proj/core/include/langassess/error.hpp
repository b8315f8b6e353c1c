// Copyright 2026 The langassess Authors. All rights reserved.
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

#ifndef LANGASSESS_ERROR_HPP_
#define LANGASSESS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace langassess {

/// Every failure the library can report. The CLI maps these onto its
/// exit codes through error_category().
enum class Errc {
  // configuration
  InvalidConfig,
  InvalidSpec,
  // input data
  MissingFile,
  ParseError,
  DuplicateEntry,
  InvalidEnumValue,
  UnsupportedEncoding,
  CorruptHeader,
  SignalTooShort,
  EmptyText,
  DimensionMismatch,
  EmptyCorpus,
  MissingColumns,
  SingleClassData,
  NonFiniteFeature,
  TooFewSamples,
  MoreThanTwoGroups,
  NoDataToPlot,
  // numerical
  DegenerateVocabulary,
  DegenerateCovariance,
  DegenerateGroups,
  UnstableLPC,
  NoVoicedContent,
  NumericalFailure,
};

enum class ErrorCategory { Config, Data, Numerical };

ErrorCategory error_category(Errc code) noexcept;
std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace langassess

#endif  // LANGASSESS_ERROR_HPP_
