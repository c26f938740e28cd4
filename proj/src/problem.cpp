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

#include "attrib/problem.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace attrib {

namespace {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim_copy(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

void validate_label(const std::string& label, int line) {
  if (label.empty()) throw parse_error("empty channel label", line);
  if (label.find_first_of(">,") != std::string::npos)
    throw parse_error("channel label '" + label + "' contains a reserved character", line);
}

}  // namespace

int attribution_problem::channel_index(const std::string& label) const {
  auto it = std::lower_bound(channels.begin(), channels.end(), label);
  if (it == channels.end() || *it != label) return -1;
  return static_cast<int>(it - channels.begin());
}

attribution_problem make_problem(const std::vector<problem_row>& rows,
                                 const std::vector<std::string>& declared_channels) {
  if (rows.empty()) throw parse_error("no paths: campaign log is empty");

  std::set<std::string> labels(declared_channels.begin(), declared_channels.end());
  for (const auto& [sequence, kpi] : rows) {
    if (sequence.empty()) throw parse_error("empty path");
    if (kpi < 0) throw parse_error("negative KPI value");
    for (const auto& label : sequence) {
      validate_label(label, 0);
      labels.insert(label);
    }
  }
  for (const auto& label : declared_channels) validate_label(label, 0);

  attribution_problem problem;
  problem.channels.assign(labels.begin(), labels.end());

  std::map<std::vector<int>, rational> merged;
  for (const auto& [sequence, kpi] : rows) {
    std::vector<int> indexed;
    indexed.reserve(sequence.size());
    for (const auto& label : sequence) indexed.push_back(problem.channel_index(label));
    merged[std::move(indexed)] += kpi;
  }

  problem.total_benefit = 0;
  for (auto& [sequence, kpi] : merged) {
    problem.paths.push_back(sequence);
    problem.kpis.push_back(kpi);
    problem.total_benefit += kpi;
  }
  return problem;
}

namespace {

attribution_problem parse_csv(std::istream& input) {
  std::vector<problem_row> rows;
  std::vector<std::string> declared;
  std::string line;
  int line_no = 0;
  bool maybe_header = true;

  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string text = trim_copy(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (text.rfind("#channels:", 0) == 0) {
        for (auto& label : split(std::string_view(text).substr(10), ',')) {
          if (label.empty()) throw parse_error("empty channel label in #channels directive", line_no);
          declared.push_back(std::move(label));
        }
      }
      continue;
    }

    auto comma = text.rfind(',');
    if (comma == std::string::npos)
      throw parse_error("expected 'path,kpi'", line_no);
    std::string path_field = trim_copy(std::string_view(text).substr(0, comma));
    std::string kpi_field = trim_copy(std::string_view(text).substr(comma + 1));

    rational kpi;
    try {
      kpi = parse_rational(kpi_field);
    } catch (const std::invalid_argument&) {
      if (maybe_header) {  // a lone leading `path,kpi` header row is allowed
        maybe_header = false;
        continue;
      }
      throw parse_error("unparseable KPI '" + kpi_field + "'", line_no);
    }
    maybe_header = false;
    if (kpi < 0) throw parse_error("negative KPI '" + kpi_field + "'", line_no);

    if (path_field.empty()) throw parse_error("empty path", line_no);
    std::vector<std::string> sequence = split(path_field, '>');
    for (const auto& label : sequence) validate_label(label, line_no);
    rows.emplace_back(std::move(sequence), std::move(kpi));
  }

  return make_problem(rows, declared);
}

attribution_problem parse_json(std::istream& input) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error("top-level JSON value must be an object");

  auto parse_kpi = [](const nlohmann::json& value) -> rational {
    if (value.is_string()) {
      try {
        return parse_rational(value.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
      }
    }
    if (value.is_number_integer())
      return rational(mpz_class(std::to_string(value.get<long long>())));
    if (value.is_number_unsigned())
      return rational(mpz_class(std::to_string(value.get<unsigned long long>())));
    // Doubles are refused: they cannot round-trip exactly.
    throw parse_error("KPI must be a string (decimal or num/den) or an integer");
  };

  std::vector<problem_row> rows;
  if (!doc.contains("paths") || !doc["paths"].is_array())
    throw parse_error("missing 'paths' array");
  for (const auto& entry : doc["paths"]) {
    if (!entry.is_object() || !entry.contains("sequence") || !entry.contains("kpi"))
      throw parse_error("each path needs 'sequence' and 'kpi'");
    std::vector<std::string> sequence;
    for (const auto& token : entry["sequence"]) {
      if (!token.is_string()) throw parse_error("channel labels must be strings");
      sequence.push_back(token.get<std::string>());
    }
    rational kpi = parse_kpi(entry["kpi"]);
    if (kpi < 0) throw parse_error("negative KPI");
    rows.emplace_back(std::move(sequence), std::move(kpi));
  }

  std::vector<std::string> declared;
  if (doc.contains("channels")) {
    for (const auto& label : doc["channels"]) {
      if (!label.is_string()) throw parse_error("channel labels must be strings");
      declared.push_back(label.get<std::string>());
    }
  }
  return make_problem(rows, declared);
}

}  // namespace

attribution_problem parse_problem(std::istream& input, input_format format) {
  return format == input_format::csv ? parse_csv(input) : parse_json(input);
}

attribution_problem parse_problem_text(std::string_view text, input_format format) {
  std::istringstream stream{std::string(text)};
  return parse_problem(stream, format);
}

std::string to_csv(const attribution_problem& problem) {
  std::ostringstream out;
  out << "#channels: ";
  for (size_t i = 0; i < problem.channels.size(); ++i) {
    if (i) out << ",";
    out << problem.channels[i];
  }
  out << "\npath,kpi\n";
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    for (size_t j = 0; j < path.size(); ++j) {
      if (j) out << ">";
      out << problem.label(path[j]);
    }
    out << "," << to_fraction_string(problem.kpis[static_cast<size_t>(p)]) << "\n";
  }
  return out.str();
}

std::string to_json_text(const attribution_problem& problem) {
  nlohmann::ordered_json doc;
  doc["channels"] = problem.channels;
  doc["paths"] = nlohmann::json::array();
  for (int p = 0; p < problem.path_count(); ++p) {
    nlohmann::ordered_json entry;
    entry["sequence"] = nlohmann::json::array();
    for (int channel : problem.paths[static_cast<size_t>(p)])
      entry["sequence"].push_back(problem.label(channel));
    entry["kpi"] = to_fraction_string(problem.kpis[static_cast<size_t>(p)]);
    doc["paths"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

channel_path_stats path_stats_declared(const attribution_problem& problem, int channel) {
  if (channel < 0 || channel >= problem.channel_count())
    throw std::invalid_argument("unknown channel index");
  channel_path_stats stats;
  std::set<int> positions;
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    int count = 0;
    for (size_t j = 0; j < path.size(); ++j) {
      if (path[j] == channel) {
        ++count;
        positions.insert(static_cast<int>(j) + 1);
      }
    }
    if (count > 0) {
      stats.appearing_paths.push_back(p);
      stats.max_repetitions = std::max(stats.max_repetitions, count);
    }
  }
  stats.positions.assign(positions.begin(), positions.end());
  return stats;
}

channel_path_stats path_stats(const attribution_problem& problem, int channel) {
  channel_path_stats stats = path_stats_declared(problem, channel);
  if (stats.appearing_paths.empty())
    throw std::invalid_argument("channel '" + problem.label(channel) +
                                "' appears in no path; query it as a declared channel");
  return stats;
}

combination_function aggregate_combinations(const attribution_problem& problem) {
  combination_function f(problem.channel_count());
  for (int p = 0; p < problem.path_count(); ++p) {
    f.add(visited_channels(problem.paths[static_cast<size_t>(p)]),
          problem.kpis[static_cast<size_t>(p)]);
  }
  return f;
}

rational total_benefit(const attribution_problem& problem) {
  rational sum = 0;
  for (const auto& kpi : problem.kpis) sum += kpi;
  return sum;
}

std::vector<problem_row> to_rows(const attribution_problem& problem) {
  std::vector<problem_row> rows;
  rows.reserve(problem.paths.size());
  for (int p = 0; p < problem.path_count(); ++p) {
    std::vector<std::string> sequence;
    for (int channel : problem.paths[static_cast<size_t>(p)])
      sequence.push_back(problem.label(channel));
    rows.emplace_back(std::move(sequence), problem.kpis[static_cast<size_t>(p)]);
  }
  return rows;
}

int occurrences(const std::vector<int>& path, int channel) {
  return static_cast<int>(std::count(path.begin(), path.end(), channel));
}

player_set visited_channels(const std::vector<int>& path) {
  player_set s;
  for (int channel : path) s.insert(channel);
  return s;
}

}  // namespace attrib
