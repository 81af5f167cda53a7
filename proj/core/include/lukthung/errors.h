// Copyright 2026 The Lukthung Classifier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LUKTHUNG_ERRORS_H_
#define LUKTHUNG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lukthung {

// Base class for every error raised by the library. The CLI maps these to a
// non-zero exit code and prints what() to stderr.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor or layer dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument or dataset does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// The input container or codec is not one we decode.
class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

// The input is recognizably in a supported format but truncated or damaged.
class CorruptInputError : public Error {
 public:
  using Error::Error;
};

// A computation produced NaN or Inf.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A required input artifact (file, checkpoint, cache entry) is absent.
class MissingInputError : public Error {
 public:
  MissingInputError(const std::string& what_is_missing, const std::string& hint)
      : Error("missing input: " + what_is_missing +
              (hint.empty() ? "" : " (" + hint + ")")) {}
};

}  // namespace lukthung

#endif  // LUKTHUNG_ERRORS_H_
