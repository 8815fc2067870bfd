// Copyright 2026 The nisqlab Authors
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

#include "nisq/vqo/sat.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace nisq {

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula f;
  bool header = false;
  long declared = -1;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> f.variables >> declared) || fmt != "cnf" || f.variables < 1)
        throw std::invalid_argument("dimacs: bad problem line '" + line + "'");
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("dimacs: clause before the problem line");
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw std::invalid_argument("dimacs: empty clause");
        f.clauses.push_back(current);
        current.clear();
        continue;
      }
      if (std::labs(lit) > f.variables) throw std::invalid_argument("dimacs: literal out of range");
      current.push_back(static_cast<int>(lit));
    }
    if (!ls.eof()) throw std::invalid_argument("dimacs: bad token in '" + line + "'");
  }
  if (!header) throw std::invalid_argument("dimacs: missing problem line");
  if (!current.empty()) f.clauses.push_back(current);
  if (declared >= 0 && static_cast<long>(f.clauses.size()) != declared)
    throw std::invalid_argument("dimacs: clause count does not match the problem line");
  return f;
}

PauliSum sat_to_hamiltonian(const CnfFormula& f) {
  if (f.variables < 1) throw std::invalid_argument("sat_to_hamiltonian: need at least one variable");
  const int n = f.variables;
  PauliSum total(n);
  for (const auto& clause : f.clauses) {
    if (clause.empty()) throw std::invalid_argument("sat_to_hamiltonian: empty clause");
    PauliSum term = PauliSum::identity(n);
    for (int lit : clause) {
      const int v = std::abs(lit);
      if (v < 1 || v > n) throw std::invalid_argument("sat_to_hamiltonian: literal out of range");
      // Violated literal: x false (Z = -1) for +v, x true (Z = +1) for -v.
      PauliSum proj = PauliSum::identity(n, 0.5);
      proj.add(lit > 0 ? -0.5 : 0.5, PauliString::single(n, v - 1, 'Z'));
      term = term * proj;
    }
    total += term;
  }
  return total.simplified();
}

std::vector<bool> assignment_of(std::uint64_t basis, int variables) {
  std::vector<bool> out(static_cast<std::size_t>(variables));
  for (int q = 0; q < variables; ++q) out[static_cast<std::size_t>(q)] = ((basis >> (variables - 1 - q)) & 1U) == 0;
  return out;
}

int violated_clauses(const CnfFormula& f, const std::vector<bool>& a) {
  int count = 0;
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = a.at(static_cast<std::size_t>(std::abs(lit) - 1));
      if ((lit > 0) == value) sat = true;
    }
    if (!sat) ++count;
  }
  return count;
}

std::string bitstring(std::uint64_t basis, int n) {
  std::string s;
  for (int q = 0; q < n; ++q) s += ((basis >> (n - 1 - q)) & 1U) ? '1' : '0';
  return s;
}

}  // namespace nisq
