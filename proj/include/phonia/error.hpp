// Copyright 2026 The phonia authors
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

#ifndef PHONIA_ERROR_HPP_
#define PHONIA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace phonia {

enum class Err {
  // audio / manifest
  MalformedHeader,
  UnsupportedEncoding,
  EmptyAudio,
  NoUsableSegment,
  MissingColumn,
  UnknownGroupLabel,
  DuplicateRecordingPath,
  // contour / features
  NoVoicedCycles,
  TooShort,
  TooFewCycles,
  NoRecurrences,
  NoVoicedFrames,
  InsufficientBandwidth,
  ContourFailure,
  TooManyMissing,
  // selection
  DegenerateFeature,
  NonConvergence,
  MismatchedFeatureSets,
  // forest / evaluation
  SingleClassInput,
  FeatureMismatch,
  TooFewRows,
  TooFewSubjects,
  EmptyClass,
  TooFewSamples,
  ZeroVariance,
  // synth / cli
  AliasingRisk,
  InvalidParams,
  UnknownGroup,
  IoError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what),
        code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

}  // namespace phonia

#endif  // PHONIA_ERROR_HPP_
