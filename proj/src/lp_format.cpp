// Copyright 2026 The qsatnet Authors
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

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "qsatnet/lpsolve.hpp"

namespace qsatnet::lp {
namespace {

std::string sanitize(const std::string& name, const char* fallback, std::size_t index) {
  std::string out;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())) || out.front() == '.') {
    out = fallback + std::to_string(index) + (out.empty() ? "" : "_" + out);
  }
  return out;
}

void write_terms(std::ostringstream& os, const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) {
    os << " 0";
    return;
  }
  bool first = true;
  for (const auto& [coef, name] : terms) {
    if (coef < 0) {
      os << " - " << -coef << ' ' << name;
    } else {
      os << (first ? " " : " + ") << coef << ' ' << name;
    }
    first = false;
  }
}

}  // namespace

std::string to_lp_format(const Model& model) {
  std::ostringstream os;
  os.precision(17);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    names.push_back(sanitize(model.variables()[j].name, "x", j));
  }
  os << "\\ qsatnet LP export\n";
  os << (model.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  os << " obj:";
  std::vector<std::pair<double, std::string>> obj;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    if (model.variables()[j].objective != 0.0) obj.push_back({model.variables()[j].objective, names[j]});
  }
  write_terms(os, obj);
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < model.num_constraints(); ++i) {
    const Constraint& c = model.constraints()[i];
    os << ' ' << sanitize(c.name, "c", i) << ':';
    std::vector<std::pair<double, std::string>> terms;
    for (const Term& t : c.terms) terms.push_back({t.coef, names[t.var]});
    write_terms(os, terms);
    switch (c.relation) {
      case Relation::kLessEqual: os << " <= "; break;
      case Relation::kGreaterEqual: os << " >= "; break;
      case Relation::kEqual: os << " = "; break;
    }
    os << c.rhs << '\n';
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variables()[j];
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      os << ' ' << names[j] << " free\n";
    } else if (std::isinf(v.lower)) {
      os << " -inf <= " << names[j] << " <= " << v.upper << '\n';
    } else if (std::isinf(v.upper)) {
      os << ' ' << names[j] << " >= " << v.lower << '\n';
    } else {
      os << ' ' << v.lower << " <= " << names[j] << " <= " << v.upper << '\n';
    }
  }
  os << "End\n";
  return os.str();
}

}  // namespace qsatnet::lp
