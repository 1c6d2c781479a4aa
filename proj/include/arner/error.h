// Copyright 2026 The arner Authors.
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

#ifndef ARNER_ERROR_H_
#define ARNER_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arner {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

class InventoryError : public Error {
 public:
  using Error::Error;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

// Malformed corpus input. line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

class VocabError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class TransliterationError : public Error {
 public:
  using Error::Error;
};

// Model, lexicon or configuration could not be loaded.
class LoadError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace arner

#endif  // ARNER_ERROR_H_
