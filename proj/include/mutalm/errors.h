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

#ifndef MUTALM_ERRORS_H_
#define MUTALM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mutalm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public Error {
 public:
  LexError(std::size_t offset, int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message),
        offset_(offset),
        line_(line) {}
  std::size_t offset() const { return offset_; }
  int line() const { return line_; }

 private:
  std::size_t offset_;
  int line_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, int line, const std::string& found,
             std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  int line() const { return line_; }
  const std::string& found() const { return found_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  int line_;
  std::string found_;
  std::vector<std::string> expected_;
};

class TargetStale : public Error {
 public:
  using Error::Error;
};

class InvalidLimit : public Error {
 public:
  using Error::Error;
};

class RemoteUnavailable : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class SpliceUnparseable : public Error {
 public:
  using Error::Error;
};

class EmptyUnit : public Error {
 public:
  using Error::Error;
};

// Raised while loading JSON documents; path() is a JSON-pointer-like path
// such as "$.kills[2][0]".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class SuiteInvalid : public Error {
 public:
  using Error::Error;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace mutalm

#endif  // MUTALM_ERRORS_H_
