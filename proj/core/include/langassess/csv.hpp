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

#ifndef LANGASSESS_CSV_HPP_
#define LANGASSESS_CSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace langassess::csv {

// RFC 4180 subset: comma separated, double quotes around cells that contain
// commas, quotes or newlines, doubled quotes inside quoted cells. Records
// never span lines.
std::vector<std::string> split_line(std::string_view line);
std::string quote(std::string_view cell);
std::string join(const std::vector<std::string>& cells);

// Reads every non-empty line, stripping a trailing '\r'.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace langassess::csv

#endif  // LANGASSESS_CSV_HPP_
