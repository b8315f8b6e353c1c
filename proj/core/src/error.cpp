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

#include "langassess/error.hpp"

namespace langassess {

ErrorCategory error_category(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidConfig:
    case Errc::InvalidSpec:
      return ErrorCategory::Config;
    case Errc::DegenerateVocabulary:
    case Errc::DegenerateCovariance:
    case Errc::DegenerateGroups:
    case Errc::UnstableLPC:
    case Errc::NoVoicedContent:
    case Errc::NumericalFailure:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Data;
  }
}

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::MissingFile: return "MissingFile";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateEntry: return "DuplicateEntry";
    case Errc::InvalidEnumValue: return "InvalidEnumValue";
    case Errc::UnsupportedEncoding: return "UnsupportedEncoding";
    case Errc::CorruptHeader: return "CorruptHeader";
    case Errc::SignalTooShort: return "SignalTooShort";
    case Errc::EmptyText: return "EmptyText";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::MissingColumns: return "MissingColumns";
    case Errc::SingleClassData: return "SingleClassData";
    case Errc::NonFiniteFeature: return "NonFiniteFeature";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::MoreThanTwoGroups: return "MoreThanTwoGroups";
    case Errc::NoDataToPlot: return "NoDataToPlot";
    case Errc::DegenerateVocabulary: return "DegenerateVocabulary";
    case Errc::DegenerateCovariance: return "DegenerateCovariance";
    case Errc::DegenerateGroups: return "DegenerateGroups";
    case Errc::UnstableLPC: return "UnstableLPC";
    case Errc::NoVoicedContent: return "NoVoicedContent";
    case Errc::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace langassess
