// Copyright 2026 The sinrcap Authors
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

#pragma once

#include <cstddef>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sinrcap/errors.hpp"
#include "sinrcap/model.hpp"

namespace sinrcap {

// Instance files are JSON objects:
//
//   {"alpha": 2.5, "beta": 1.0, "noise": 0.0,
//    "metric": "euclidean" | {"matrix": [[...], ...]},
//    "links": [{"id", "sx", "sy", "rx", "ry", "weight", "beta"?, "noise"?}],
//    "primaries": [{"id", "sx", "sy", "rx", "ry", "power"}]}
//
// Doubles are written in shortest round-trip form, so writing a parsed file
// reproduces it byte for byte.

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] inline void schema_error(const std::string& path,
                                      const std::string& what) {
  throw ParseError("field " + path + ": " + what, 0, 0);
}

inline void check_keys(const ordered_json& obj, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) schema_error(path + "." + key, "unknown field");
  }
}

inline double number(const ordered_json& obj, const std::string& path,
                     std::string_view key) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) schema_error(path + "." + std::string(key), "missing");
  if (!it->is_number())
    schema_error(path + "." + std::string(key), "expected a number");
  return it->get<double>();
}

inline std::optional<double> optional_number(const ordered_json& obj,
                                             const std::string& path,
                                             std::string_view key) {
  if (!obj.contains(std::string(key))) return std::nullopt;
  return number(obj, path, key);
}

inline LinkId integer_id(const ordered_json& obj, const std::string& path) {
  auto it = obj.find("id");
  if (it == obj.end()) schema_error(path + ".id", "missing");
  if (!it->is_number_integer()) schema_error(path + ".id", "expected an integer");
  return it->get<LinkId>();
}

inline Link parse_link(const ordered_json& obj, const std::string& path,
                       bool primary) {
  if (primary)
    check_keys(obj, path, {"id", "sx", "sy", "rx", "ry", "power"});
  else
    check_keys(obj, path,
               {"id", "sx", "sy", "rx", "ry", "weight", "beta", "noise"});
  Link l;
  l.id = integer_id(obj, path);
  l.sender = {number(obj, path, "sx"), number(obj, path, "sy")};
  l.receiver = {number(obj, path, "rx"), number(obj, path, "ry")};
  if (!primary) {
    l.weight = optional_number(obj, path, "weight").value_or(1.0);
    l.beta_override = optional_number(obj, path, "beta");
    l.noise_override = optional_number(obj, path, "noise");
  }
  return l;
}

template <class Fn>
void each_element(const ordered_json& root, const char* key, Fn&& fn) {
  auto it = root.find(key);
  if (it == root.end()) return;
  if (!it->is_array()) schema_error(key, "expected an array");
  for (std::size_t i = 0; i < it->size(); ++i)
    fn((*it)[i], std::string(key) + "[" + std::to_string(i) + "]");
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  using detail::ordered_json;
  ordered_json root;
  try {
    root = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, column] = detail::line_column(text, byte);
    throw ParseError("syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " +
                         e.what(),
                     line, column);
  }
  detail::check_keys(root, "$",
                     {"alpha", "beta", "noise", "metric", "links",
                      "primaries"});
  const double alpha = detail::number(root, "$", "alpha");
  const double beta = detail::number(root, "$", "beta");
  const double noise = detail::number(root, "$", "noise");

  Metric metric = EuclideanPlane{};
  if (auto it = root.find("metric"); it != root.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "euclidean")
        detail::schema_error("metric", "unknown metric name");
    } else {
      detail::check_keys(*it, "metric", {"matrix"});
      const auto& m = it->at("matrix");
      if (!m.is_array()) detail::schema_error("metric.matrix", "expected rows");
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < m.size(); ++i) {
        const std::string path = "metric.matrix[" + std::to_string(i) + "]";
        if (!m[i].is_array()) detail::schema_error(path, "expected a row");
        std::vector<double> row;
        for (const auto& x : m[i]) {
          if (!x.is_number()) detail::schema_error(path, "expected numbers");
          row.push_back(x.get<double>());
        }
        rows.push_back(std::move(row));
      }
      metric = DistanceMatrix(std::move(rows));
    }
  }

  std::vector<Link> links;
  detail::each_element(root, "links", [&](const auto& obj, std::string path) {
    links.push_back(detail::parse_link(obj, path, false));
  });
  PrimarySet primaries;
  detail::each_element(root, "primaries",
                       [&](const auto& obj, std::string path) {
                         primaries.links.push_back(
                             detail::parse_link(obj, path, true));
                         primaries.powers.push_back(
                             detail::number(obj, path, "power"));
                       });
  try {
    return Instance(std::move(links), alpha, beta, noise, std::move(metric),
                    std::move(primaries));
  } catch (const InvalidInstance& e) {
    throw ParseError(std::string("invalid instance: ") + e.what(), 0, 0);
  }
}

inline std::string write_instance(const Instance& instance) {
  using detail::ordered_json;
  ordered_json root;
  root["alpha"] = instance.alpha();
  root["beta"] = instance.beta();
  root["noise"] = instance.noise();
  if (const auto* m = std::get_if<DistanceMatrix>(&instance.metric()))
    root["metric"] = ordered_json{{"matrix", m->rows()}};
  else
    root["metric"] = "euclidean";
  ordered_json links = ordered_json::array();
  for (const Link& l : instance.links()) {
    ordered_json obj;
    obj["id"] = l.id;
    obj["sx"] = l.sender.x;
    obj["sy"] = l.sender.y;
    obj["rx"] = l.receiver.x;
    obj["ry"] = l.receiver.y;
    obj["weight"] = l.weight;
    if (l.beta_override) obj["beta"] = *l.beta_override;
    if (l.noise_override) obj["noise"] = *l.noise_override;
    links.push_back(std::move(obj));
  }
  root["links"] = std::move(links);
  const PrimarySet& p = instance.primaries();
  if (!p.empty()) {
    ordered_json prims = ordered_json::array();
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Link& l = p.links[j];
      prims.push_back(ordered_json{{"id", l.id},
                                   {"sx", l.sender.x},
                                   {"sy", l.sender.y},
                                   {"rx", l.receiver.x},
                                   {"ry", l.receiver.y},
                                   {"power", p.powers[j]}});
    }
    root["primaries"] = std::move(prims);
  }
  return root.dump(2) + "\n";
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return parse_instance(text);
}

inline void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << write_instance(instance);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace sinrcap
