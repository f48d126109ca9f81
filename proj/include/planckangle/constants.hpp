// Copyright 2026 The planckangle Authors
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

// Planck units and the versioned SI constants table.
//
// The table text below is byte-identical to data/planck_constants.txt; a unit
// test enforces this. Reports carry the table's version and FNV-1a hash.

#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace planckangle {

inline constexpr std::string_view kConstantsTable =
    "# planckangle constants table\n"
    "# CODATA 2018 recommended values, SI units. Exact decimal strings.\n"
    "version = codata-2018.1\n"
    "speed_of_light_m_per_s = 299792458\n"
    "reduced_planck_constant_j_s = 1.054571817e-34\n"
    "newtonian_constant_m3_per_kg_s2 = 6.67430e-11\n"
    "planck_length_m = 1.616255e-35\n";

struct ConstantsTable {
  std::string version;
  double speed_of_light = 0.0;        // m/s
  double reduced_planck = 0.0;        // J s
  double newton_g = 0.0;              // m^3 kg^-1 s^-2
  double planck_length = 0.0;         // m

  double planck_time() const { return planck_length / speed_of_light; }
  double planck_mass() const { return reduced_planck / (planck_length * speed_of_light); }
};

/// Parses "key = value" lines; '#' starts a comment line.
inline ConstantsTable parse_constants(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("constants table: malformed line: " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto number = [&](std::string_view key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("constants table: missing " + std::string(key));
    double v = 0.0;
    const auto& s = it->second;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw std::runtime_error("constants table: bad number for " + std::string(key));
    }
    return v;
  };
  ConstantsTable t;
  auto it = kv.find("version");
  if (it == kv.end()) throw std::runtime_error("constants table: missing version");
  t.version = it->second;
  t.speed_of_light = number("speed_of_light_m_per_s");
  t.reduced_planck = number("reduced_planck_constant_j_s");
  t.newton_g = number("newtonian_constant_m3_per_kg_s2");
  t.planck_length = number("planck_length_m");
  return t;
}

inline const ConstantsTable& constants() {
  static const ConstantsTable table = parse_constants(kConstantsTable);
  return table;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// 16 hex digits identifying the table contents.
inline std::string constants_hash() {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(kConstantsTable);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace planckangle
