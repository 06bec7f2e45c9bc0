/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/lp_export.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace cashsched {

namespace {

constexpr std::size_t kMaxName = 255;
constexpr int kTermsPerLine = 8;

bool allowed(char c)
{
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) return true;
  switch (c) {
    case '!': case '"': case '#': case '$': case '%': case '&': case '(': case ')': case '/':
    case ',': case '.': case ';': case '?': case '@': case '_': case '`': case '\'': case '{':
    case '}': case '|': case '~':
      return true;
    default:
      return false;
  }
}

std::string number(double v)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void expression(const std::vector<Term>& terms, const std::vector<std::string>& names)
  {
    int on_line = 0;
    bool first = true;
    for (const auto& t : terms) {
      if (t.coef == 0.0) continue;
      if (on_line == kTermsPerLine) {
        out_ << "\n   ";
        on_line = 0;
      }
      const double a = std::abs(t.coef);
      out_ << (t.coef < 0.0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      if (a != 1.0) out_ << number(a) << ' ';
      out_ << names[t.var];
      first = false;
      ++on_line;
    }
    if (first) out_ << "0 " << (names.empty() ? "ZERO" : names.front());
  }

 private:
  std::ostream& out_;
};

}  // namespace

std::string sanitize_lp_name(const std::string& name)
{
  std::string out;
  out.reserve(name.size() + 1);
  for (char c : name) out.push_back(allowed(c) ? c : '_');
  if (out.empty() || (out[0] >= '0' && out[0] <= '9') || out[0] == '.') out.insert(out.begin(), 'v');
  if (out.size() > kMaxName) out.resize(kMaxName);
  return out;
}

void export_lp(const MilpModel& m, std::ostream& out, int objective)
{
  const auto& vars = m.variables();
  std::vector<std::string> names;
  std::unordered_set<std::string> used;
  for (const auto& v : vars) {
    std::string base = sanitize_lp_name(v.name);
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    names.push_back(std::move(name));
  }
  Writer w(out);
  out << "\\ model with " << vars.size() << " variables, " << m.constraints().size() << " constraints\n";
  const auto& objs = m.objectives();
  for (std::size_t k = 0; k < objs.size(); ++k) {
    if (static_cast<int>(k) == objective) continue;
    out << "\\ other objective " << objs[k].label << " ("
        << (objs[k].sense == ObjSense::maximize ? "max" : "min") << ")\n";
  }
  if (objective >= 0 && objective < static_cast<int>(objs.size())) {
    const Objective& o = objs[objective];
    if (o.constant != 0.0) out << "\\ objective constant " << number(o.constant) << " not included\n";
    out << (o.sense == ObjSense::maximize ? "Maximize\n" : "Minimize\n");
    out << " " << sanitize_lp_name(o.label) << ": ";
    w.expression(o.terms, names);
    out << "\n";
  } else {
    out << "Minimize\n obj: 0 " << (names.empty() ? "ZERO" : names.front()) << "\n";
  }
  out << "Subject To\n";
  std::unordered_set<std::string> row_names;
  for (const auto& c : m.constraints()) {
    std::string base = sanitize_lp_name(c.name);
    std::string name = base;
    for (int k = 2; row_names.count(name); ++k) name = base + "_" + std::to_string(k);
    row_names.insert(name);
    out << " " << name << ": ";
    w.expression(c.terms, names);
    out << (c.sense == RowSense::le ? " <= " : c.sense == RowSense::ge ? " >= " : " = ") << number(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    const bool binary = v.kind == VarKind::binary;
    if (binary && v.lower == 0.0 && v.upper == 1.0) continue;
    if (!binary && v.lower == 0.0 && v.upper == kInf) continue;
    if (v.lower == -kInf && v.upper == kInf) {
      out << " " << names[j] << " free\n";
    } else if (v.lower == v.upper) {
      out << " " << names[j] << " = " << number(v.lower) << "\n";
    } else if (v.upper == kInf) {
      out << " " << names[j] << " >= " << number(v.lower) << "\n";
    } else {
      out << " " << (v.lower == -kInf ? std::string("-inf") : number(v.lower)) << " <= " << names[j] << " <= "
          << number(v.upper) << "\n";
    }
  }
  bool header = false;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].kind != VarKind::binary) continue;
    if (!header) {
      out << "Binaries\n";
      header = true;
    }
    out << " " << names[j] << "\n";
  }
  out << "End\n";
  out.flush();
  if (!out) throw std::runtime_error("failed writing LP model");
}

}  // namespace cashsched
