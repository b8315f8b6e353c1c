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

#include "langassess/corpus.hpp"

#include <fstream>
#include <set>
#include <tuple>

#include "langassess/csv.hpp"
#include "langassess/error.hpp"

namespace langassess {

std::string_view to_string(Task t) { return t == Task::PD ? "pd" : "sr"; }
std::string_view to_string(Medium m) { return m == Medium::Phone ? "phone" : "web"; }
std::string_view to_string(Label l) { return l == Label::Dementia ? "dementia" : "control"; }

Task parse_task(std::string_view s) {
  if (s == "pd") return Task::PD;
  if (s == "sr") return Task::SR;
  throw Error(Errc::InvalidEnumValue, "task must be pd or sr, got '" + std::string(s) + "'");
}

Medium parse_medium(std::string_view s) {
  if (s == "phone") return Medium::Phone;
  if (s == "web") return Medium::Web;
  throw Error(Errc::InvalidEnumValue, "medium must be phone or web, got '" + std::string(s) + "'");
}

Label parse_label(std::string_view s) {
  if (s == "dementia") return Label::Dementia;
  if (s == "control") return Label::Control;
  throw Error(Errc::InvalidEnumValue,
              "label must be dementia or control, got '" + std::string(s) + "'");
}

std::string SampleEntry::sample_id() const {
  return subject_id + "/" + session_id + "/" + std::string(to_string(task));
}

CorpusManifest::CorpusManifest(std::vector<SampleEntry> entries, std::filesystem::path base_dir)
    : entries_(std::move(entries)), base_dir_(std::move(base_dir)) {
  std::set<std::tuple<std::string, std::string, Task>> seen;
  for (const auto& e : entries_) {
    if (e.subject_id.empty() || e.session_id.empty()) {
      throw Error(Errc::InvalidSpec, "empty subject or session id");
    }
    if (!e.audio_path && !e.transcript_path) {
      throw Error(Errc::InvalidSpec, "entry " + e.sample_id() + " has neither audio nor transcript");
    }
    if (!seen.emplace(e.subject_id, e.session_id, e.task).second) {
      throw Error(Errc::DuplicateEntry, "duplicate entry " + e.sample_id());
    }
  }
}

std::filesystem::path CorpusManifest::resolve(const std::filesystem::path& p) const {
  if (p.is_absolute() || base_dir_.empty()) return p;
  return base_dir_ / p;
}

namespace {

std::optional<std::filesystem::path> optional_path(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  return std::filesystem::path(cell);
}

std::string parse_error(std::size_t row, std::size_t column, const std::string& what) {
  return "row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what;
}

}  // namespace

CorpusManifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(Errc::MissingFile, "manifest not found: " + path.string());
  }
  const auto lines = csv::read_lines(path);
  if (lines.empty() || lines.front() != kManifestHeader) {
    throw Error(Errc::ParseError, parse_error(1, 1, "expected header '" +
                                                       std::string(kManifestHeader) + "'"));
  }
  std::vector<SampleEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    const auto cells = csv::split_line(lines[i]);
    if (cells.size() != 7) {
      throw Error(Errc::ParseError,
                  parse_error(row, std::min<std::size_t>(cells.size(), 7) + 1,
                              "expected 7 columns, found " + std::to_string(cells.size())));
    }
    SampleEntry e;
    e.subject_id = cells[0];
    e.session_id = cells[1];
    try {
      e.task = parse_task(cells[2]);
      e.medium = parse_medium(cells[3]);
      e.label = parse_label(cells[4]);
    } catch (const Error& err) {
      throw Error(Errc::InvalidEnumValue, "row " + std::to_string(row) + ": " + err.what());
    }
    e.audio_path = optional_path(cells[5]);
    e.transcript_path = optional_path(cells[6]);
    if (e.subject_id.empty()) throw Error(Errc::ParseError, parse_error(row, 1, "empty subject_id"));
    if (e.session_id.empty()) throw Error(Errc::ParseError, parse_error(row, 2, "empty session_id"));
    if (!e.audio_path && !e.transcript_path) {
      throw Error(Errc::ParseError, parse_error(row, 6, "audio_path and transcript_path both empty"));
    }
    entries.push_back(std::move(e));
  }
  return CorpusManifest(std::move(entries), path.parent_path());
}

void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MissingFile, "cannot write " + path.string());
  out << kManifestHeader << '\n';
  for (const auto& e : manifest.entries()) {
    out << csv::join({e.subject_id, e.session_id, std::string(to_string(e.task)),
                      std::string(to_string(e.medium)), std::string(to_string(e.label)),
                      e.audio_path ? e.audio_path->generic_string() : std::string(),
                      e.transcript_path ? e.transcript_path->generic_string() : std::string()})
        << '\n';
  }
}

}  // namespace langassess
