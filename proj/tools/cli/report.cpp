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

#include "report.hpp"

#include <charconv>
#include <cmath>
#include <utility>

namespace povmlab::cli {

Check Check::info(std::string name, double value) {
  return {std::move(name), value, 0.0, true, Kind::kInfo};
}

Check Check::at_most(std::string name, double value, double limit) {
  return {std::move(name), value, limit, value <= limit, Kind::kAssert};
}

Check Check::at_least(std::string name, double value, double limit) {
  return {std::move(name), value, limit, value >= limit, Kind::kAssert};
}

bool Report::all_pass() const {
  for (const Check& c : checks) {
    if (c.kind == Check::Kind::kAssert && !c.pass) return false;
  }
  return true;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  // to_chars ignores the locale, so the decimal point is always '.'.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return csv_field(std::get<std::string>(cell));
}

Json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    return std::isfinite(*d) ? Json(*d == 0.0 ? 0.0 : *d) : Json(nullptr);
  }
  if (const auto* i = std::get_if<long long>(&cell)) return Json(*i);
  return Json(std::get<std::string>(cell));
}

const char* status(const Check& c) {
  if (c.kind == Check::Kind::kInfo) return "info";
  return c.pass ? "pass" : "fail";
}

}  // namespace

std::string render_csv(const Report& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(report.columns[i]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  // Checks trail as comment lines so plain CSV readers can skip them.
  for (const Check& c : report.checks) {
    out += "# check " + c.name + " value=" + format_number(c.value);
    if (c.kind == Check::Kind::kAssert) out += " limit=" + format_number(c.limit);
    out += ' ';
    out += status(c);
    out += '\n';
  }
  return out;
}

std::string render_json(const Report& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      obj[report.columns[i]] = cell_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    Json obj = Json::object();
    obj["name"] = c.name;
    obj["value"] = cell_json(c.value);
    if (c.kind == Check::Kind::kAssert) obj["limit"] = cell_json(c.limit);
    obj["status"] = status(c);
    checks.push_back(std::move(obj));
  }
  Json top = Json::object();
  top["config"] = report.config;
  top["rows"] = std::move(rows);
  top["checks"] = std::move(checks);
  return top.dump(2) + '\n';
}

}  // namespace povmlab::cli
