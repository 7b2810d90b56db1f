// Copyright 2026 The CNMA Authors
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

#include "cnma/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cnma {
namespace {

bool legal_lp_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::vector<std::string> sanitized_names(const Milp& milp) {
  std::vector<std::string> names;
  std::set<std::string> used;
  for (std::size_t j = 0; j < milp.vars.size(); ++j) {
    std::string name = milp.vars[j].name;
    bool changed = false;
    for (char& c : name)
      if (!legal_lp_char(c)) { c = '_'; changed = true; }
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])) ||
        name[0] == '.') {
      name = "v" + name;
      changed = true;
    }
    // The index suffix makes the rename reversible and collision-free.
    if (changed || used.count(name)) name += "_v" + std::to_string(j);
    used.insert(name);
    names.push_back(name);
  }
  return names;
}

void write_terms(std::ostringstream& os,
                 const std::vector<MilpRow::Term>& terms,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (const auto& t : terms) {
    if (t.coeff == 0.0) continue;
    if (first) {
      if (t.coeff < 0.0) os << "- ";
      first = false;
    } else {
      os << (t.coeff < 0.0 ? " - " : " + ");
    }
    const double mag = std::abs(t.coeff);
    if (mag != 1.0) os << mag << " ";
    os << names[t.var];
  }
  if (first && !names.empty()) os << "0 " << names[0];
}

}  // namespace

std::string export_lp_format(const Milp& milp) {
  const auto names = sanitized_names(milp);
  std::ostringstream os;
  os.precision(17);

  os << (milp.sense == Sense::kMaximize ? "Maximize" : "Minimize") << "\n obj: ";
  write_terms(os, milp.objective, names);
  os << "\n";

  os << "Subject To\n";
  for (std::size_t i = 0; i < milp.rows.size(); ++i) {
    const auto& row = milp.rows[i];
    os << " c" << i << ": ";
    write_terms(os, row.terms, names);
    os << (row.rel == RowRel::kLe ? " <= " : row.rel == RowRel::kGe ? " >= "
                                                                     : " = ")
       << row.rhs << "\n";
  }

  os << "Bounds\n";
  for (std::size_t j = 0; j < milp.vars.size(); ++j) {
    const auto& v = milp.vars[j];
    os << " " << v.lower << " <= " << names[j] << " <= " << v.upper << "\n";
  }

  bool any_general = false, any_binary = false;
  for (const auto& v : milp.vars) {
    any_general |= v.kind == VarKind::kInteger;
    any_binary |= v.kind == VarKind::kBinary;
  }
  if (any_general) {
    os << "Generals\n";
    for (std::size_t j = 0; j < milp.vars.size(); ++j)
      if (milp.vars[j].kind == VarKind::kInteger) os << " " << names[j] << "\n";
  }
  if (any_binary) {
    os << "Binaries\n";
    for (std::size_t j = 0; j < milp.vars.size(); ++j)
      if (milp.vars[j].kind == VarKind::kBinary) os << " " << names[j] << "\n";
  }
  os << "End\n";
  return os.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '<' || c == '>' || c == '=') {
      flush();
      std::string op(1, c);
      if (i + 1 < text.size() && text[i + 1] == '=') { op += '='; ++i; }
      tokens.push_back(op);
    } else if (c == '+' || c == '-' || c == ':') {
      flush();
      tokens.push_back(std::string(1, c));
    } else {
      cur += c;
    }
  }
  flush();
  return tokens;
}

bool is_number(const std::string& t) {
  char* end = nullptr;
  std::strtod(t.c_str(), &end);
  return end && *end == '\0' && end != t.c_str();
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

Milp parse_lp_format(const std::string& text) {
  const auto tokens = tokenize(text);
  Milp milp;
  std::map<std::string, int> index;
  auto var_of = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int j = milp.add_var(name, VarKind::kContinuous, 0.0, 0.0);
    index[name] = j;
    return j;
  };

  enum Section { kNone, kObjective, kConstraints, kBounds, kGenerals, kBinaries };
  Section section = kNone;

  std::size_t i = 0;
  bool saw_end = false;
  std::vector<MilpRow::Term> terms;
  double sign = 1.0, coeff_pending = 1.0;
  bool have_coeff = false;

  auto flush_expr = [&]() {
    sign = 1.0;
    coeff_pending = 1.0;
    have_coeff = false;
  };

  while (i < tokens.size()) {
    const std::string tok = tokens[i];
    const std::string low = lower(tok);
    if (low == "maximize" || low == "max") { milp.sense = Sense::kMaximize; section = kObjective; terms.clear(); flush_expr(); ++i; continue; }
    if (low == "minimize" || low == "min") { milp.sense = Sense::kMinimize; section = kObjective; terms.clear(); flush_expr(); ++i; continue; }
    if (low == "subject") { // "Subject To"
      if (section == kObjective) { milp.objective = terms; terms.clear(); }
      section = kConstraints; flush_expr(); i += 2; continue;
    }
    if (low == "st" || low == "s.t.") {
      if (section == kObjective) { milp.objective = terms; terms.clear(); }
      section = kConstraints; flush_expr(); ++i; continue;
    }
    if (low == "bounds") { section = kBounds; flush_expr(); ++i; continue; }
    if (low == "generals" || low == "general") { section = kGenerals; ++i; continue; }
    if (low == "binaries" || low == "binary") { section = kBinaries; ++i; continue; }
    if (low == "end") { saw_end = true; break; }

    switch (section) {
      case kObjective:
      case kConstraints: {
        if (tok == ":") { terms.clear(); flush_expr(); ++i; continue; }
        // A label token is followed by ':'.
        if (i + 1 < tokens.size() && tokens[i + 1] == ":") { ++i; continue; }
        if (tok == "+") { sign = 1.0; ++i; continue; }
        if (tok == "-") { sign = -sign; ++i; continue; }
        if (tok == "<=" || tok == ">=" || tok == "=" || tok == "<" || tok == ">") {
          if (section != kConstraints)
            throw std::runtime_error("lp parse: relation in objective");
          double rhs_sign = 1.0;
          std::size_t k = i + 1;
          if (k < tokens.size() && tokens[k] == "-") { rhs_sign = -1.0; ++k; }
          if (k >= tokens.size() || !is_number(tokens[k]))
            throw std::runtime_error("lp parse: missing rhs");
          RowRel rel = (tok[0] == '<') ? RowRel::kLe
                       : (tok[0] == '>') ? RowRel::kGe
                                         : RowRel::kEq;
          auto& row = milp.add_row(rel, rhs_sign * std::stod(tokens[k]));
          row.terms = terms;
          terms.clear();
          flush_expr();
          i = k + 1;
          continue;
        }
        if (is_number(tok)) {
          coeff_pending = sign * std::stod(tok);
          have_coeff = true;
          sign = 1.0;
          ++i;
          continue;
        }
        // Variable token.
        const double c = have_coeff ? coeff_pending : sign;
        terms.push_back({var_of(tok), c});
        flush_expr();
        ++i;
        continue;
      }
      case kBounds: {
        // Form: lo <= name <= hi, either endpoint possibly negative.
        auto read_number = [&](std::size_t& k) {
          double s = 1.0;
          while (k < tokens.size() && (tokens[k] == "-" || tokens[k] == "+")) {
            if (tokens[k] == "-") s = -s;
            ++k;
          }
          if (k >= tokens.size() || !is_number(tokens[k]))
            throw std::runtime_error("lp parse: bad bounds number");
          return s * std::stod(tokens[k++]);
        };
        std::size_t k = i;
        const double lo = read_number(k);
        if (k + 1 >= tokens.size() || tokens[k] != "<=")
          throw std::runtime_error("lp parse: unsupported bounds line near " + tok);
        ++k;
        const int j = var_of(tokens[k++]);
        if (k >= tokens.size() || tokens[k] != "<=")
          throw std::runtime_error("lp parse: unsupported bounds line near " + tok);
        ++k;
        const double hi = read_number(k);
        milp.vars[j].lower = lo;
        milp.vars[j].upper = hi;
        i = k;
        continue;
      }
      case kGenerals:
        milp.vars[var_of(tok)].kind = VarKind::kInteger;
        ++i;
        continue;
      case kBinaries: {
        const int j = var_of(tok);
        milp.vars[j].kind = VarKind::kBinary;
        milp.vars[j].lower = std::max(milp.vars[j].lower, 0.0);
        milp.vars[j].upper = std::min(milp.vars[j].upper, 1.0);
        ++i;
        continue;
      }
      case kNone:
        throw std::runtime_error("lp parse: unexpected token " + tok);
    }
  }
  if (section == kObjective) milp.objective = terms;
  if (!saw_end) throw std::runtime_error("lp parse: missing End marker");
  return milp;
}

}  // namespace cnma
