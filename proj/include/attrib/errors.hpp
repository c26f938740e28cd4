// Copyright 2026 The Attribeo Authors.
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

#ifndef ATTRIB_ERRORS_HPP
#define ATTRIB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace attrib {

/// Malformed campaign input. Carries the 1-based input line when known.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what_arg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what_arg
                                    : what_arg),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Raised when an exhaustive computation would exceed its configured cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace attrib

#endif  // ATTRIB_ERRORS_HPP
