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

#ifndef ATTRIB_REPORT_HPP
#define ATTRIB_REPORT_HPP

#include <string>
#include <vector>

namespace attrib {

enum class check_status { pass, fail, info };

struct check_item {
  std::string name;
  check_status status = check_status::pass;
  std::string detail;  // witness of a failure, or a short note
};

struct check_report {
  std::vector<check_item> items;

  void add(std::string name, bool passed, std::string detail = {}) {
    items.push_back({std::move(name), passed ? check_status::pass : check_status::fail,
                     std::move(detail)});
  }

  void note(std::string name, std::string detail) {
    items.push_back({std::move(name), check_status::info, std::move(detail)});
  }

  bool all_passed() const {
    for (const auto& item : items) {
      if (item.status == check_status::fail) return false;
    }
    return true;
  }

  const check_item* find(const std::string& name) const {
    for (const auto& item : items) {
      if (item.name == name) return &item;
    }
    return nullptr;
  }
};

}  // namespace attrib

#endif  // ATTRIB_REPORT_HPP
