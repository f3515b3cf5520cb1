// Copyright 2026 The MutaLM Authors
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

#ifndef MUTALM_TESTS_TEST_SUPPORT_H_
#define MUTALM_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <string>

#include <unistd.h>

#include "mutalm/lang/parser.h"
#include "mutalm/util.h"

namespace mutalm::testing {

inline std::string DemoPath(const std::string& name) {
  return std::string(MUTALM_DEMO_DIR) + "/" + name;
}

inline lang::SourceUnit Canon(const std::string& text) {
  return lang::Canonicalize(lang::Parse(text));
}

inline lang::SourceUnit LoadDemo(const std::string& name) {
  return Canon(ReadFile(DemoPath(name)));
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("mutalm_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mutalm::testing

#endif  // MUTALM_TESTS_TEST_SUPPORT_H_
