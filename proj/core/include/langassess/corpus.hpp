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

#ifndef LANGASSESS_CORPUS_HPP_
#define LANGASSESS_CORPUS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace langassess {

enum class Task { PD, SR };
enum class Medium { Phone, Web };
// Numeric values double as class ids for the classifiers.
enum class Label { Control = 0, Dementia = 1 };

std::string_view to_string(Task t);
std::string_view to_string(Medium m);
std::string_view to_string(Label l);
Task parse_task(std::string_view s);
Medium parse_medium(std::string_view s);
Label parse_label(std::string_view s);

struct SampleEntry {
  std::string subject_id;
  std::string session_id;
  Task task = Task::PD;
  Medium medium = Medium::Phone;
  Label label = Label::Control;
  std::optional<std::filesystem::path> audio_path;
  std::optional<std::filesystem::path> transcript_path;

  // "subject/session/task", unique within a manifest.
  std::string sample_id() const;

  bool operator==(const SampleEntry&) const = default;
};

class CorpusManifest {
 public:
  CorpusManifest() = default;
  // Validates the uniqueness and path invariants; throws DuplicateEntry or
  // InvalidSpec.
  explicit CorpusManifest(std::vector<SampleEntry> entries,
                          std::filesystem::path base_dir = {});

  const std::vector<SampleEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Directory that relative paths in the manifest are resolved against.
  const std::filesystem::path& base_dir() const { return base_dir_; }
  std::filesystem::path resolve(const std::filesystem::path& p) const;

  bool operator==(const CorpusManifest& other) const { return entries_ == other.entries_; }

 private:
  std::vector<SampleEntry> entries_;
  std::filesystem::path base_dir_;
};

inline constexpr std::string_view kManifestHeader =
    "subject_id,session_id,task,medium,label,audio_path,transcript_path";

CorpusManifest load_manifest(const std::filesystem::path& path);
void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);

}  // namespace langassess

#endif  // LANGASSESS_CORPUS_HPP_
