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

#ifndef PHONIA_MANIFEST_HPP_
#define PHONIA_MANIFEST_HPP_

#include <optional>
#include <string>
#include <vector>

#include "phonia/audio.hpp"

namespace phonia {

struct ManifestRow {
  std::string recording_path;
  std::string subject_id;
  Group group;
  Sex sex = Sex::Unknown;
  std::optional<double> age_years;
  std::optional<double> updrs3;
  std::optional<double> disease_duration_years;
};

struct Manifest {
  std::vector<ManifestRow> rows;
};

// CSV with header. Required columns: recording_path, subject_id, group,
// sex. Optional: age, updrs3, disease_duration. Paths must be unique.
Manifest load_manifest(const std::string& path);

struct LoadFailure {
  std::string recording_path;
  std::string error;
};

struct CorpusLoad {
  std::vector<Recording> recordings;
  std::vector<LoadFailure> failures;  // reported, never silently dropped
};

// Loads every manifest row's audio, joining metadata. Relative paths
// resolve against audio_root. Rows whose audio fails to load are returned
// in `failures`.
CorpusLoad load_corpus(const std::string& manifest_path,
                       const std::string& audio_root);

}  // namespace phonia

#endif  // PHONIA_MANIFEST_HPP_
