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

#include "phonia/manifest.hpp"

#include <filesystem>
#include <set>
#include <stdexcept>

#include "phonia/csv.hpp"
#include "phonia/error.hpp"

namespace phonia {

namespace {

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int find_column(const csv::Row& header, const std::string& name,
                bool required) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  if (required) throw Error(Err::MissingColumn, name);
  return -1;
}

std::string cell(const csv::Row& row, int col) {
  if (col < 0 || static_cast<std::size_t>(col) >= row.size()) return "";
  return row[static_cast<std::size_t>(col)];
}

}  // namespace

Manifest load_manifest(const std::string& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty()) throw Error(Err::MissingColumn, path + " is empty");
  const auto& header = rows[0];
  const int c_path = find_column(header, "recording_path", true);
  const int c_subject = find_column(header, "subject_id", true);
  const int c_group = find_column(header, "group", true);
  const int c_sex = find_column(header, "sex", true);
  const int c_age = find_column(header, "age", false);
  const int c_updrs = find_column(header, "updrs3", false);
  const int c_duration = find_column(header, "disease_duration", false);

  Manifest m;
  std::set<std::string> seen_paths;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ManifestRow mr;
    mr.recording_path = cell(row, c_path);
    mr.subject_id = cell(row, c_subject);
    if (mr.recording_path.empty() || mr.subject_id.empty()) {
      throw Error(Err::MissingColumn,
                  path + " row " + std::to_string(r + 1) +
                      " lacks recording_path or subject_id");
    }
    if (!seen_paths.insert(mr.recording_path).second) {
      throw Error(Err::DuplicateRecordingPath, mr.recording_path);
    }
    try {
      mr.group = parse_group(cell(row, c_group));
    } catch (const Error&) {
      throw Error(Err::UnknownGroupLabel,
                  "'" + cell(row, c_group) + "' in row " +
                      std::to_string(r + 1) + " of " + path);
    }
    mr.sex = parse_sex(cell(row, c_sex));
    mr.age_years = parse_optional(cell(row, c_age));
    mr.updrs3 = parse_optional(cell(row, c_updrs));
    mr.disease_duration_years = parse_optional(cell(row, c_duration));
    m.rows.push_back(std::move(mr));
  }
  return m;
}

CorpusLoad load_corpus(const std::string& manifest_path,
                       const std::string& audio_root) {
  const Manifest m = load_manifest(manifest_path);
  CorpusLoad out;
  for (const auto& row : m.rows) {
    std::filesystem::path p(row.recording_path);
    if (p.is_relative()) p = std::filesystem::path(audio_root) / p;
    try {
      Recording rec = load_wav(p.string());
      rec.id = row.recording_path;
      rec.subject_id = row.subject_id;
      rec.group = row.group;
      rec.sex = row.sex;
      rec.age_years = row.age_years;
      rec.updrs3 = row.updrs3;
      rec.disease_duration_years = row.disease_duration_years;
      out.recordings.push_back(std::move(rec));
    } catch (const Error& e) {
      out.failures.push_back({row.recording_path, e.what()});
    }
  }
  return out;
}

}  // namespace phonia
