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

#include "phonia/error.hpp"

namespace phonia {

const char* err_name(Err e) {
  switch (e) {
    case Err::MalformedHeader: return "MalformedHeader";
    case Err::UnsupportedEncoding: return "UnsupportedEncoding";
    case Err::EmptyAudio: return "EmptyAudio";
    case Err::NoUsableSegment: return "NoUsableSegment";
    case Err::MissingColumn: return "MissingColumn";
    case Err::UnknownGroupLabel: return "UnknownGroupLabel";
    case Err::DuplicateRecordingPath: return "DuplicateRecordingPath";
    case Err::NoVoicedCycles: return "NoVoicedCycles";
    case Err::TooShort: return "TooShort";
    case Err::TooFewCycles: return "TooFewCycles";
    case Err::NoRecurrences: return "NoRecurrences";
    case Err::NoVoicedFrames: return "NoVoicedFrames";
    case Err::InsufficientBandwidth: return "InsufficientBandwidth";
    case Err::ContourFailure: return "ContourFailure";
    case Err::TooManyMissing: return "TooManyMissing";
    case Err::DegenerateFeature: return "DegenerateFeature";
    case Err::NonConvergence: return "NonConvergence";
    case Err::MismatchedFeatureSets: return "MismatchedFeatureSets";
    case Err::SingleClassInput: return "SingleClassInput";
    case Err::FeatureMismatch: return "FeatureMismatch";
    case Err::TooFewRows: return "TooFewRows";
    case Err::TooFewSubjects: return "TooFewSubjects";
    case Err::EmptyClass: return "EmptyClass";
    case Err::TooFewSamples: return "TooFewSamples";
    case Err::ZeroVariance: return "ZeroVariance";
    case Err::AliasingRisk: return "AliasingRisk";
    case Err::InvalidParams: return "InvalidParams";
    case Err::UnknownGroup: return "UnknownGroup";
    case Err::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace phonia
