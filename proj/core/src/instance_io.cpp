/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/instance_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace cashsched {

using Json = nlohmann::ordered_json;

namespace {

void line_column(std::string_view text, std::size_t byte, int& line, int& column)
{
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

Json parse_json(std::string_view text)
{
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    int line = 0, column = 0;
    // The reported byte is one past the offending character.
    line_column(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg, line,
                     column);
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what, 0, 0, path.empty() ? "/" : path);
}

const char* type_name(const Json& j)
{
  return j.type_name();
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
  if (!j.is_object()) fail(path, std::string("expected an object, found ") + type_name(j));
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) fail(path, "unknown field \"" + it.key() + "\"");
  }
}

const Json& member(const Json& j, const char* key, const std::string& path)
{
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& path)
{
  if (!j.is_number()) fail(path, std::string("expected a number, found ") + type_name(j));
  return j.get<double>();
}

int integer(const Json& j, const std::string& path)
{
  if (!j.is_number_integer()) fail(path, std::string("expected an integer, found ") + type_name(j));
  return j.get<int>();
}

std::string text_of(const Json& j, const std::string& path)
{
  if (!j.is_string()) fail(path, std::string("expected a string, found ") + type_name(j));
  return j.get<std::string>();
}

double number_field(const Json& j, const char* key, const std::string& path)
{
  return number(member(j, key, path), path + "/" + key);
}

std::vector<double> numbers(const Json& j, const std::string& path)
{
  if (!j.is_array()) fail(path, std::string("expected an array, found ") + type_name(j));
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
  return out;
}

Triangle triangle(const Json& j, const std::string& path)
{
  if (!j.is_array() || j.size() != 3) fail(path, "expected [lo, mid, hi]");
  return Triangle{number(j[0], path + "/0"), number(j[1], path + "/1"), number(j[2], path + "/2")};
}

NivtfNumber fuzzy(const Json& j, const std::string& path)
{
  try {
    if (j.is_number()) return NivtfNumber::crisp(j.get<double>());
    if (j.is_array()) return NivtfNumber::triangular(triangle(j, path));
    if (j.is_object()) {
      expect_object(j, path, {"lower", "upper"});
      return NivtfNumber::make(triangle(member(j, "lower", path), path + "/lower"),
                               triangle(member(j, "upper", path), path + "/upper"));
    }
  } catch (const FuzzyError& e) {
    fail(path, e.what());
  }
  fail(path, std::string("expected a number, [lo, mid, hi] or {lower, upper}, found ") + type_name(j));
}

// Integral values are written without a fractional part.
Json num(double v)
{
  if (std::isfinite(v) && std::abs(v) < 1e15 && v == std::trunc(v)) return static_cast<std::int64_t>(v);
  return v;
}

Json nums(const std::vector<double>& v)
{
  Json out = Json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

Json fuzzy_json(const NivtfNumber& v)
{
  if (v.is_crisp()) return num(v.modal());
  auto tri = [](const Triangle& t) { return Json::array({num(t.lo), num(t.mid), num(t.hi)}); };
  if (v.is_triangular()) return tri(v.lower());
  return Json{{"lower", tri(v.lower())}, {"upper", tri(v.upper())}};
}

std::vector<NivtfNumber> fuzzy_list(const Json& j, const std::string& path)
{
  if (!j.is_array()) fail(path, std::string("expected an array, found ") + type_name(j));
  std::vector<NivtfNumber> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(fuzzy(j[i], path + "/" + std::to_string(i)));
  return out;
}

void check_schema(const Json& j)
{
  const Json& s = member(j, "schema", "");
  if (!s.is_number_integer() || s.get<int>() != kSchemaVersion) {
    fail("/schema", "unsupported schema version " + s.dump() + " (expected " + std::to_string(kSchemaVersion) + ")");
  }
}

FinanceParams finance(const Json& j, const std::string& path)
{
  expect_object(j, path, {"initial_capital", "max_long_loan", "max_short_loan", "min_cash", "r_excess", "r_delay",
                          "r_long", "r_short", "compounding_days"});
  FinanceParams f;
  f.initial_capital = number_field(j, "initial_capital", path);
  f.max_long_loan = number_field(j, "max_long_loan", path);
  f.max_short_loan = number_field(j, "max_short_loan", path);
  f.min_cash = number_field(j, "min_cash", path);
  f.r_excess = number_field(j, "r_excess", path);
  f.r_delay = number_field(j, "r_delay", path);
  f.r_long = number_field(j, "r_long", path);
  f.r_short = number_field(j, "r_short", path);
  if (j.contains("compounding_days")) f.compounding_days = integer(j["compounding_days"], path + "/compounding_days");
  return f;
}

Json finance_json(const FinanceParams& f)
{
  return Json{{"initial_capital", num(f.initial_capital)},
              {"max_long_loan", num(f.max_long_loan)},
              {"max_short_loan", num(f.max_short_loan)},
              {"min_cash", num(f.min_cash)},
              {"r_excess", f.r_excess},
              {"r_delay", f.r_delay},
              {"r_long", f.r_long},
              {"r_short", f.r_short},
              {"compounding_days", f.compounding_days}};
}

FinancingDecisions decisions(const Json& j, const std::string& path)
{
  expect_object(j, path, {"schema", "ltl", "stl", "pa", "dp"});
  FinancingDecisions d;
  d.ltl = number_field(j, "ltl", path);
  d.stl = numbers(member(j, "stl", path), path + "/stl");
  d.pa = numbers(member(j, "pa", path), path + "/pa");
  d.dp = numbers(member(j, "dp", path), path + "/dp");
  if (d.pa.size() != d.stl.size()) fail(path + "/pa", "expected " + std::to_string(d.stl.size()) + " periods like stl");
  if (d.dp.size() != d.stl.size()) fail(path + "/dp", "expected " + std::to_string(d.stl.size()) + " periods like stl");
  return d;
}

}  // namespace

InstanceDocument parse_instance(std::string_view text)
{
  const Json j = parse_json(text);
  expect_object(j, "", {"schema", "name", "horizon", "periods", "resources", "finance", "activities", "notes"});
  check_schema(j);
  InstanceDocument doc;
  Project& p = doc.project;
  if (j.contains("name")) p.name = text_of(j["name"], "/name");
  p.horizon = integer(member(j, "horizon", ""), "/horizon");
  {
    const Json& per = member(j, "periods", "");
    if (!per.is_array()) fail("/periods", "expected an array of period end days");
    std::vector<int> b;
    for (std::size_t i = 0; i < per.size(); ++i) b.push_back(integer(per[i], "/periods/" + std::to_string(i)));
    p.periods = PeriodGrid(std::move(b));
  }
  const Json& res = member(j, "resources", "");
  expect_object(res, "/resources", {"renewable", "nonrenewable", "daily_cost_cap"});
  std::vector<std::string> resource_names;
  auto read_resources = [&](const char* key, std::vector<double>& prices) {
    const std::string path = std::string("/resources/") + key;
    const Json& list = member(res, key, "/resources");
    if (!list.is_array()) fail(path, "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string rp = path + "/" + std::to_string(i);
      expect_object(list[i], rp, {"name", "price"});
      if (list[i].contains("name")) text_of(list[i]["name"], rp + "/name");
      prices.push_back(number_field(list[i], "price", rp));
    }
  };
  read_resources("renewable", p.pricing.renewable);
  read_resources("nonrenewable", p.pricing.nonrenewable);
  p.pricing.daily_cap = number_field(res, "daily_cost_cap", "/resources");
  p.finance = finance(member(j, "finance", ""), "/finance");

  const Json& acts = member(j, "activities", "");
  if (!acts.is_array()) fail("/activities", "expected an array");
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const std::string ap = "/activities/" + std::to_string(i);
    const Json& a = acts[i];
    expect_object(a, ap, {"id", "name", "dummy", "predecessors", "modes"});
    Activity act;
    act.id = text_of(member(a, "id", ap), ap + "/id");
    act.name = a.contains("name") ? text_of(a["name"], ap + "/name") : act.id;
    if (a.contains("dummy")) {
      if (!a["dummy"].is_boolean()) fail(ap + "/dummy", "expected true or false");
      act.is_dummy = a["dummy"].get<bool>();
    }
    if (a.contains("predecessors")) {
      const Json& pr = a["predecessors"];
      if (!pr.is_array()) fail(ap + "/predecessors", "expected an array of ids");
      for (std::size_t k = 0; k < pr.size(); ++k) {
        act.predecessors.push_back(text_of(pr[k], ap + "/predecessors/" + std::to_string(k)));
      }
    }
    if (a.contains("modes")) {
      const Json& ms = a["modes"];
      if (!ms.is_array()) fail(ap + "/modes", "expected an array");
      for (std::size_t m = 0; m < ms.size(); ++m) {
        const std::string mp = ap + "/modes/" + std::to_string(m);
        expect_object(ms[m], mp, {"duration", "payment", "renewable", "nonrenewable"});
        Mode mode{fuzzy(member(ms[m], "duration", mp), mp + "/duration"), 0.0, {}, {}};
        if (ms[m].contains("payment")) mode.payment = number(ms[m]["payment"], mp + "/payment");
        if (ms[m].contains("renewable")) mode.renewable = fuzzy_list(ms[m]["renewable"], mp + "/renewable");
        if (ms[m].contains("nonrenewable")) {
          mode.nonrenewable = fuzzy_list(ms[m]["nonrenewable"], mp + "/nonrenewable");
        }
        act.modes.push_back(std::move(mode));
      }
    } else if (act.is_dummy) {
      act.modes.push_back(Mode{NivtfNumber::crisp(0.0), 0.0,
                               std::vector<NivtfNumber>(p.pricing.renewable.size(), NivtfNumber::crisp(0.0)),
                               std::vector<NivtfNumber>(p.pricing.nonrenewable.size(), NivtfNumber::crisp(0.0))});
    } else {
      fail(ap, "missing field \"modes\"");
    }
    p.activities.push_back(std::move(act));
  }
  if (j.contains("notes")) {
    const Json& n = j["notes"];
    if (!n.is_object()) fail("/notes", "expected an object of strings");
    for (auto it = n.begin(); it != n.end(); ++it) doc.notes[it.key()] = text_of(it.value(), "/notes/" + it.key());
  }
  doc.diagnostics = validate_project(p);
  return doc;
}

std::string write_instance(const Project& p, const std::map<std::string, std::string>& notes)
{
  Json j;
  j["schema"] = kSchemaVersion;
  j["name"] = p.name;
  j["horizon"] = p.horizon;
  j["periods"] = p.periods.boundaries();
  Json res;
  auto resources = [](const std::vector<double>& prices, const char* prefix) {
    Json list = Json::array();
    for (std::size_t k = 0; k < prices.size(); ++k) {
      list.push_back(Json{{"name", prefix + std::to_string(k + 1)}, {"price", num(prices[k])}});
    }
    return list;
  };
  res["renewable"] = resources(p.pricing.renewable, "R");
  res["nonrenewable"] = resources(p.pricing.nonrenewable, "W");
  res["daily_cost_cap"] = num(p.pricing.daily_cap);
  j["resources"] = res;
  j["finance"] = finance_json(p.finance);
  Json acts = Json::array();
  for (const auto& a : p.activities) {
    Json ja;
    ja["id"] = a.id;
    if (a.name != a.id) ja["name"] = a.name;
    if (a.is_dummy) ja["dummy"] = true;
    ja["predecessors"] = a.predecessors;
    Json ms = Json::array();
    for (const auto& m : a.modes) {
      Json jm;
      jm["duration"] = fuzzy_json(m.duration);
      jm["payment"] = num(m.payment);
      jm["renewable"] = Json::array();
      for (const auto& v : m.renewable) jm["renewable"].push_back(fuzzy_json(v));
      jm["nonrenewable"] = Json::array();
      for (const auto& v : m.nonrenewable) jm["nonrenewable"].push_back(fuzzy_json(v));
      ms.push_back(std::move(jm));
    }
    ja["modes"] = std::move(ms);
    acts.push_back(std::move(ja));
  }
  j["activities"] = std::move(acts);
  if (!notes.empty()) {
    Json n = Json::object();
    for (const auto& [k, v] : notes) n[k] = v;
    j["notes"] = std::move(n);
  }
  return j.dump(2) + "\n";
}

Schedule parse_schedule(std::string_view text, const Project& p)
{
  const Json j = parse_json(text);
  expect_object(j, "", {"schema", "activities", "makespan"});
  check_schema(j);
  const Json& acts = member(j, "activities", "");
  if (!acts.is_array()) fail("/activities", "expected an array");
  Schedule s;
  s.items.assign(p.activities.size(), ScheduledActivity{-1, 0, 0});
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const std::string ap = "/activities/" + std::to_string(i);
    expect_object(acts[i], ap, {"id", "mode", "start", "completion"});
    const std::string id = text_of(member(acts[i], "id", ap), ap + "/id");
    const auto k = p.index_of(id);
    if (!k) fail(ap + "/id", "unknown activity \"" + id + "\"");
    if (s.items[*k].mode >= 0) fail(ap + "/id", "activity \"" + id + "\" listed twice");
    s.items[*k].mode = integer(member(acts[i], "mode", ap), ap + "/mode") - 1;
    s.items[*k].start = integer(member(acts[i], "start", ap), ap + "/start");
    s.items[*k].completion = integer(member(acts[i], "completion", ap), ap + "/completion");
  }
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (s.items[i].mode < 0) fail("/activities", "activity \"" + p.activities[i].id + "\" is not scheduled");
  }
  return s;
}

std::string write_schedule(const Schedule& s, const Project& p)
{
  Json j;
  j["schema"] = kSchemaVersion;
  j["makespan"] = s.makespan();
  Json acts = Json::array();
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    const auto& a = s.items[i];
    acts.push_back(Json{{"id", p.activities[i].id}, {"mode", a.mode + 1}, {"start", a.start}, {"completion", a.completion}});
  }
  j["activities"] = std::move(acts);
  return j.dump(2) + "\n";
}

FinancingDecisions parse_decisions(std::string_view text)
{
  const Json j = parse_json(text);
  check_schema(j);
  return decisions(j, "");
}

std::string write_decisions(const FinancingDecisions& d)
{
  Json j;
  j["schema"] = kSchemaVersion;
  j["ltl"] = num(d.ltl);
  j["stl"] = nums(d.stl);
  j["pa"] = nums(d.pa);
  j["dp"] = nums(d.dp);
  return j.dump(2) + "\n";
}

LedgerReplay parse_replay(std::string_view text)
{
  const Json j = parse_json(text);
  expect_object(j, "", {"schema", "name", "finance", "tbu", "due", "decisions", "notes"});
  check_schema(j);
  LedgerReplay r;
  r.finance = finance(member(j, "finance", ""), "/finance");
  r.tbu = numbers(member(j, "tbu", ""), "/tbu");
  r.due = numbers(member(j, "due", ""), "/due");
  r.decisions = decisions(member(j, "decisions", ""), "/decisions");
  return r;
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path);
  return os.str();
}

void write_file_atomic(const std::string& path, std::string_view content)
{
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path);
  }
}

}  // namespace cashsched
