// Copyright 2026 The embsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMBSIM_ERROR_H_
#define EMBSIM_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace embsim {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input (files, flags, shapes).
class InputError : public Error {
 public:
  using Error::Error;
};

// A text file could not be parsed. `line()` is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : InputError("line " + std::to_string(line) + ": " + detail),
        line_(line),
        detail_(detail) {}

  // Same error, attributed to a named source ("path:line: detail").
  ParseError(const std::string& source, const ParseError& inner)
      : InputError(source + ":" + std::to_string(inner.line()) + ": " +
                   inner.detail()),
        line_(inner.line()),
        detail_(inner.detail()) {}

  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

// A numerical procedure could not produce a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace embsim

#endif  // EMBSIM_ERROR_H_
