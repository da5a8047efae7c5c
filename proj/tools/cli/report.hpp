// Copyright 2026 The povmlab Authors
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

#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace povmlab::cli {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;

// A check either asserts something (counted by --verify) or just reports a
// number, like the coexistence criterion.
struct Check {
  enum class Kind { kInfo, kAssert };
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = true;
  Kind kind = Kind::kInfo;

  static Check info(std::string name, double value);
  static Check at_most(std::string name, double value, double limit);
  static Check at_least(std::string name, double value, double limit);
};

struct Report {
  Json config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<Check> checks;

  bool all_pass() const;
};

// %.15g-style text with '.' as decimal point whatever the locale.
std::string format_number(double x);

std::string render_csv(const Report& report);
std::string render_json(const Report& report);

}  // namespace povmlab::cli
