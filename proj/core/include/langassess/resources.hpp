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

#ifndef LANGASSESS_RESOURCES_HPP_
#define LANGASSESS_RESOURCES_HPP_

#include <string_view>

namespace langassess::resources {

// Data files compiled into the library (core/data/).
std::string_view tag_lexicon();      // word<TAB>tag
std::string_view topic_vocabulary(); // topic<TAB>tag<TAB>word
std::string_view embeddings();       // word v1 .. v25
std::string_view word_counts();      // word count

}  // namespace langassess::resources

#endif  // LANGASSESS_RESOURCES_HPP_
