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

// Plain-text exchange format for lattice states and operators.
//
//   planckangle-state 1          planckangle-operator 1
//   n <N>                        n <N>
//   <re> <im>   (N lines)        label <text>
//                                <re> <im>   (N*N lines, row-major)
//
// Numbers are written with 17 significant digits so a write/read cycle is exact.

#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "planckangle/lattice.hpp"

namespace planckangle::lattice {

namespace detail {

inline void write_complex(std::ostream& out, Complex c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c.real(), c.imag());
  out << buf;
}

inline Complex read_complex(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("lattice text: unexpected end of input");
  std::istringstream ls(line);
  double re = 0.0, im = 0.0;
  std::string extra;
  if (!(ls >> re >> im) || (ls >> extra)) throw std::runtime_error("lattice text: bad complex line '" + line + "'");
  return {re, im};
}

inline void expect_header(std::istream& in, const std::string& magic) {
  std::string line;
  if (!std::getline(in, line) || line != magic + " 1") {
    throw std::runtime_error("lattice text: expected header '" + magic + " 1'");
  }
}

inline long read_count(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n ", 0) != 0) throw std::runtime_error("lattice text: expected 'n <N>'");
  const long n = std::stol(line.substr(2));
  if (n <= 0) throw std::runtime_error("lattice text: n must be positive");
  return n;
}

}  // namespace detail

inline void write_state(std::ostream& out, const LatticeState& psi) {
  out << "planckangle-state 1\n" << "n " << psi.size() << "\n";
  for (const auto& c : psi.amplitudes()) detail::write_complex(out, c);
}

inline LatticeState read_state(std::istream& in) {
  detail::expect_header(in, "planckangle-state");
  const long n = detail::read_count(in);
  Amplitudes a(static_cast<std::size_t>(n));
  for (auto& c : a) c = detail::read_complex(in);
  return LatticeState(std::move(a));
}

inline void write_operator(std::ostream& out, const OperatorMatrix& op) {
  out << "planckangle-operator 1\n" << "n " << op.dim() << "\n" << "label " << op.label << "\n";
  for (Eigen::Index r = 0; r < op.dim(); ++r) {
    for (Eigen::Index c = 0; c < op.dim(); ++c) detail::write_complex(out, op.entries(r, c));
  }
}

inline OperatorMatrix read_operator(std::istream& in) {
  detail::expect_header(in, "planckangle-operator");
  const long n = detail::read_count(in);
  std::string line;
  if (!std::getline(in, line) || line.rfind("label", 0) != 0) throw std::runtime_error("lattice text: expected label");
  OperatorMatrix op{Eigen::MatrixXcd(n, n), line.size() > 6 ? line.substr(6) : std::string()};
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) op.entries(r, c) = detail::read_complex(in);
  }
  return op;
}

}  // namespace planckangle::lattice
