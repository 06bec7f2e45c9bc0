/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/psplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <random>

#include <json.hpp>

namespace cashsched {

namespace {

constexpr const char* kHeader = "header";
constexpr const char* kProject = "PROJECT INFORMATION";
constexpr const char* kPrecedence = "PRECEDENCE RELATIONS";
constexpr const char* kRequests = "REQUESTS/DURATIONS";
constexpr const char* kAvailability = "RESOURCEAVAILABILITIES";

struct Line {
  int number = 0;
  std::string text;
};

[[noreturn]] void fail(const char* section, int line, const std::string& what)
{
  std::string msg = std::string(section) + ": ";
  if (line > 0) msg += "line " + std::to_string(line) + ": ";
  throw ParseError(msg + what, line, 0, section);
}

std::string trim(std::string_view s)
{
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> tokens(std::string_view s)
{
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> to_int(const std::string& s)
{
  int v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<int> integers(const char* section, const Line& l)
{
  std::vector<int> out;
  for (const auto& t : tokens(l.text)) {
    const auto v = to_int(t);
    if (!v) fail(section, l.number, "expected an integer, found \"" + t + "\"");
    out.push_back(*v);
  }
  return out;
}

std::string squash(std::string_view s)
{
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

std::optional<std::string> section_name(const std::string& text)
{
  const std::string s = squash(text);
  for (const char* name : {kProject, kPrecedence, kRequests, kAvailability}) {
    const std::string key = squash(name);
    if (s.rfind(key, 0) == 0) return std::string(name);
  }
  return std::nullopt;
}

bool is_rule(const std::string& text)
{
  const std::string t = trim(text);
  return !t.empty() && (t.find_first_not_of('*') == std::string::npos || t.find_first_not_of('-') == std::string::npos);
}

struct Split {
  std::vector<Line> header;
  std::map<std::string, std::vector<Line>> sections;
};

Split split(std::string_view text)
{
  Split out;
  std::vector<Line>* current = &out.header;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    pos = end + 1;
    std::string s(raw);
    if (trim(s).empty()) continue;
    if (trim(s).find_first_not_of('*') == std::string::npos) {
      current = nullptr;
      continue;
    }
    if (auto name = section_name(s)) {
      if (out.sections.count(*name)) fail(name->c_str(), number, "section appears twice");
      current = &out.sections[*name];
      continue;
    }
    if (!current) current = &out.header;
    current->push_back({number, std::move(s)});
  }
  return out;
}

struct HeaderValues {
  std::optional<int> jobs, horizon, renewable, nonrenewable, doubly;
};

HeaderValues read_header(const std::vector<Line>& lines)
{
  HeaderValues h;
  for (const auto& l : lines) {
    const auto colon = l.text.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = squash(l.text.substr(0, colon));
    const auto values = tokens(l.text.substr(colon + 1));
    std::optional<int>* slot = nullptr;
    if (key.rfind("JOBS", 0) == 0) slot = &h.jobs;
    else if (key == "HORIZON") slot = &h.horizon;
    else if (key == "-RENEWABLE") slot = &h.renewable;
    else if (key == "-NONRENEWABLE") slot = &h.nonrenewable;
    else if (key == "-DOUBLYCONSTRAINED") slot = &h.doubly;
    if (!slot) continue;
    const auto v = values.empty() ? std::nullopt : to_int(values.front());
    if (!v || *v < 0) fail(kHeader, l.number, "expected a non-negative count after \"" + trim(l.text.substr(0, colon)) + "\"");
    *slot = *v;
  }
  return h;
}

// Counts R/N/D labels in a column header such as "R 1  R 2  N 1" or "R1 N1".
std::map<char, int> resource_labels(const std::vector<std::string>& toks, std::size_t from)
{
  std::map<char, int> out{{'R', 0}, {'N', 0}, {'D', 0}};
  for (std::size_t i = from; i < toks.size(); ++i) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(toks[i][0])));
    if (out.count(c)) ++out[c];
  }
  return out;
}

const std::vector<Line>& section(const Split& s, const char* name)
{
  auto it = s.sections.find(name);
  if (it == s.sections.end()) fail(name, 0, "section missing");
  return it->second;
}

bool starts_with_word(const std::string& text, const char* word)
{
  const auto t = tokens(text);
  if (t.empty()) return false;
  std::string a = t.front();
  std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return std::tolower(c); });
  return a.rfind(word, 0) == 0;
}

}  // namespace

const char* to_string(BenchmarkDialect d)
{
  return d == BenchmarkDialect::mmlib ? "mmlib" : "psplib-mm";
}

int BenchmarkInstance::mode_count() const
{
  int n = 0;
  for (const auto& j : jobs) n += static_cast<int>(j.modes.size());
  return n;
}

int BenchmarkInstance::arc_count() const
{
  int n = 0;
  for (const auto& j : jobs) n += static_cast<int>(j.successors.size());
  return n;
}

BenchmarkInstance parse_psplib_mm(std::string_view text, BenchmarkDialect dialect)
{
  const bool strict = dialect == BenchmarkDialect::psplib_mm;
  const Split parts = split(text);
  const HeaderValues h = read_header(parts.header);
  if (!h.jobs) fail(kHeader, 0, "missing \"jobs (incl. supersource/sink )\" line");
  if (!h.renewable || !h.nonrenewable) fail(kHeader, 0, "missing renewable or nonrenewable resource count");
  if (strict && !h.horizon) fail(kHeader, 0, "missing horizon");
  if (strict && !h.doubly) fail(kHeader, 0, "missing doubly constrained resource count");
  if (strict) section(parts, kProject);

  BenchmarkInstance b;
  b.dialect = dialect;
  b.declared_jobs = *h.jobs;
  b.declared_renewable = *h.renewable;
  b.declared_nonrenewable = *h.nonrenewable;
  b.declared_doubly = h.doubly.value_or(0);
  const int n = b.declared_jobs;
  const int R = b.declared_renewable, N = b.declared_nonrenewable, D = b.declared_doubly;

  // Precedence: jobnr, #modes, #successors, successors...
  std::vector<int> declared_modes;
  for (const auto& l : section(parts, kPrecedence)) {
    if (starts_with_word(l.text, "jobnr")) continue;
    const auto v = integers(kPrecedence, l);
    if (v.size() < 3) fail(kPrecedence, l.number, "expected job number, mode count and successor count");
    const int expected = static_cast<int>(b.jobs.size()) + 1;
    if (v[0] != expected) fail(kPrecedence, l.number, "expected job " + std::to_string(expected) + ", found " + std::to_string(v[0]));
    if (v[1] < 1) fail(kPrecedence, l.number, "job " + std::to_string(v[0]) + " has no modes");
    if (static_cast<int>(v.size()) != 3 + v[2]) {
      fail(kPrecedence, l.number, "job " + std::to_string(v[0]) + " declares " + std::to_string(v[2]) +
                                      " successors, found " + std::to_string(v.size() - 3));
    }
    BenchmarkJob job;
    job.number = v[0];
    job.successors.assign(v.begin() + 3, v.end());
    for (int s : job.successors) {
      if (s < 1 || s > n || s == job.number) fail(kPrecedence, l.number, "successor " + std::to_string(s) + " out of range");
    }
    declared_modes.push_back(v[1]);
    b.jobs.push_back(std::move(job));
  }
  if (static_cast<int>(b.jobs.size()) != n) {
    fail(kPrecedence, 0, "header declares " + std::to_string(n) + " jobs, section lists " + std::to_string(b.jobs.size()));
  }
  {
    std::vector<int> indegree(n, 0);
    for (const auto& j : b.jobs) {
      for (int s : j.successors) ++indegree[s - 1];
    }
    std::vector<int> ready;
    for (int i = 0; i < n; ++i) {
      if (indegree[i] == 0) ready.push_back(i);
    }
    int seen = 0;
    while (!ready.empty()) {
      const int i = ready.back();
      ready.pop_back();
      ++seen;
      for (int s : b.jobs[i].successors) {
        if (--indegree[s - 1] == 0) ready.push_back(s - 1);
      }
    }
    if (seen != n) fail(kPrecedence, 0, "precedence relations contain a cycle");
  }

  // Requests: [jobnr] mode duration usage...; the job number is omitted on
  // continuation rows.
  const int columns = R + N + D;
  bool have_columns = false;
  int current = 0;
  for (const auto& l : section(parts, kRequests)) {
    if (is_rule(l.text)) continue;
    if (starts_with_word(l.text, "jobnr")) {
      const auto t = tokens(l.text);
      const auto labels = resource_labels(t, 3);
      if (labels.at('R') != R || labels.at('N') != N || labels.at('D') != D) {
        fail(kRequests, l.number, "column header lists " + std::to_string(labels.at('R')) + "/" +
                                      std::to_string(labels.at('N')) + "/" + std::to_string(labels.at('D')) +
                                      " resources, header declares " + std::to_string(R) + "/" + std::to_string(N) +
                                      "/" + std::to_string(D));
      }
      have_columns = true;
      continue;
    }
    if (!have_columns) fail(kRequests, l.number, "missing column header");
    const auto v = integers(kRequests, l);
    std::size_t at = 0;
    if (static_cast<int>(v.size()) == 3 + columns) {
      current = v[0];
      at = 1;
      if (current < 1 || current > n) fail(kRequests, l.number, "job " + std::to_string(current) + " out of range");
      if (!b.jobs[current - 1].modes.empty()) fail(kRequests, l.number, "job " + std::to_string(current) + " listed twice");
    } else if (static_cast<int>(v.size()) != 2 + columns) {
      fail(kRequests, l.number, "expected " + std::to_string(3 + columns) + " values, found " + std::to_string(v.size()));
    }
    if (current == 0) fail(kRequests, l.number, "mode row before any job row");
    auto& modes = b.jobs[current - 1].modes;
    if (v[at] != static_cast<int>(modes.size()) + 1) {
      fail(kRequests, l.number, "job " + std::to_string(current) + ": expected mode " + std::to_string(modes.size() + 1) +
                                    ", found " + std::to_string(v[at]));
    }
    BenchmarkMode m;
    m.duration = v[at + 1];
    if (m.duration < 0) fail(kRequests, l.number, "negative duration");
    for (int k = 0; k < R; ++k) m.renewable.push_back(v[at + 2 + k]);
    for (int k = 0; k < N; ++k) m.nonrenewable.push_back(v[at + 2 + R + k]);
    // Doubly constrained columns are read and dropped.
    for (int x : v) {
      if (x < 0) fail(kRequests, l.number, "negative value");
    }
    modes.push_back(std::move(m));
  }
  int request_jobs = 0;
  for (int i = 0; i < n; ++i) {
    const int found = static_cast<int>(b.jobs[i].modes.size());
    if (found > 0) ++request_jobs;
    if (found == 0) continue;
    if (found != declared_modes[i]) {
      fail(kRequests, 0, "job " + std::to_string(i + 1) + " declares " + std::to_string(declared_modes[i]) +
                             " modes, section lists " + std::to_string(found));
    }
  }
  if (request_jobs != n) {
    fail(kRequests, 0, "header declares " + std::to_string(n) + " jobs, section lists " + std::to_string(request_jobs));
  }

  // Availabilities: label line, then one value per resource.
  const auto& avail = section(parts, kAvailability);
  std::vector<int> values;
  bool labelled = false;
  for (const auto& l : avail) {
    const auto t = tokens(l.text);
    if (!t.empty() && std::isalpha(static_cast<unsigned char>(t[0][0]))) {
      const auto labels = resource_labels(t, 0);
      if (labels.at('R') != R || labels.at('N') != N || labels.at('D') != D) {
        fail(kAvailability, l.number, "column header does not match the declared resources");
      }
      labelled = true;
      continue;
    }
    if (!values.empty()) fail(kAvailability, l.number, "more than one availability row");
    values = integers(kAvailability, l);
  }
  if (!labelled) fail(kAvailability, 0, "missing column header");
  if (static_cast<int>(values.size()) != columns) {
    fail(kAvailability, 0, "expected " + std::to_string(columns) + " values, found " + std::to_string(values.size()));
  }
  b.renewable_capacity.assign(values.begin(), values.begin() + R);
  b.nonrenewable_capacity.assign(values.begin() + R, values.begin() + R + N);

  if (h.horizon) {
    b.horizon = *h.horizon;
  } else {
    for (const auto& j : b.jobs) {
      int longest = 0;
      for (const auto& m : j.modes) longest = std::max(longest, m.duration);
      b.horizon += longest;
    }
  }
  return b;
}

HeaderEcho header_echo(const BenchmarkInstance& b)
{
  HeaderEcho e;
  e.declared_jobs = b.declared_jobs;
  e.precedence_jobs = static_cast<int>(b.jobs.size());
  for (const auto& j : b.jobs) {
    if (!j.modes.empty()) ++e.request_jobs;
  }
  e.declared_renewable = b.declared_renewable;
  e.request_renewable = b.jobs.empty() || b.jobs[0].modes.empty() ? 0 : static_cast<int>(b.jobs[0].modes[0].renewable.size());
  e.declared_nonrenewable = b.declared_nonrenewable;
  e.request_nonrenewable =
      b.jobs.empty() || b.jobs[0].modes.empty() ? 0 : static_cast<int>(b.jobs[0].modes[0].nonrenewable.size());
  e.precedence_modes = b.mode_count();
  e.request_modes = b.mode_count();
  e.arcs = b.arc_count();
  return e;
}

FinanceConfig parse_finance_config(std::string_view text)
{
  using Json = nlohmann::json;
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("finance config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("finance config: expected an object", 0, 0, "/");
  FinanceConfig c;
  std::map<std::string, double*> reals{
      {"markup", &c.markup},
      {"duration_spread_lower", &c.duration_spread_lower},
      {"duration_spread_upper", &c.duration_spread_upper},
      {"resource_spread_lower", &c.resource_spread_lower},
      {"resource_spread_upper", &c.resource_spread_upper},
      {"capital_fraction", &c.capital_fraction},
      {"long_loan_fraction", &c.long_loan_fraction},
      {"short_loan_fraction", &c.short_loan_fraction},
      {"min_cash", &c.min_cash},
      {"daily_cap_factor", &c.daily_cap_factor},
      {"r_excess", &c.r_excess},
      {"r_delay", &c.r_delay},
      {"r_long", &c.r_long},
      {"r_short", &c.r_short},
  };
  std::map<std::string, int*> ints{
      {"renewable_price_min", &c.renewable_price_min},
      {"renewable_price_max", &c.renewable_price_max},
      {"nonrenewable_price_min", &c.nonrenewable_price_min},
      {"nonrenewable_price_max", &c.nonrenewable_price_max},
      {"period_length", &c.period_length},
      {"compounding_days", &c.compounding_days},
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string path = "/" + it.key();
    if (auto r = reals.find(it.key()); r != reals.end()) {
      if (!it->is_number()) throw ParseError("finance config: " + path + ": expected a number", 0, 0, path);
      *r->second = it->get<double>();
    } else if (auto i = ints.find(it.key()); i != ints.end()) {
      if (!it->is_number_integer()) throw ParseError("finance config: " + path + ": expected an integer", 0, 0, path);
      *i->second = it->get<int>();
    } else {
      throw ParseError("finance config: /: unknown field \"" + it.key() + "\"", 0, 0, "/");
    }
  }
  return c;
}

namespace {

NivtfNumber spread(double v, double lower, double upper)
{
  if (lower == 0.0 && upper == 0.0) return NivtfNumber::crisp(v);
  return NivtfNumber::make({v * (1.0 - lower), v, v * (1.0 + lower)}, {v * (1.0 - upper), v, v * (1.0 + upper)});
}

double cents(double v)
{
  return std::round(v * 100.0) / 100.0;
}

void check_config(const FinanceConfig& c)
{
  auto fraction_pair = [](double lo, double hi, const char* what) {
    if (!(lo >= 0.0 && lo <= hi && hi < 1.0)) {
      throw std::invalid_argument(std::string(what) + " spreads need 0 <= lower <= upper < 1");
    }
  };
  fraction_pair(c.duration_spread_lower, c.duration_spread_upper, "duration");
  fraction_pair(c.resource_spread_lower, c.resource_spread_upper, "resource");
  if (c.markup < 0.0) throw std::invalid_argument("markup must be non-negative");
  if (c.renewable_price_min < 0 || c.renewable_price_min > c.renewable_price_max || c.nonrenewable_price_min < 0 ||
      c.nonrenewable_price_min > c.nonrenewable_price_max) {
    throw std::invalid_argument("price ranges need 0 <= min <= max");
  }
  if (c.period_length < 1) throw std::invalid_argument("period_length must be at least 1");
  if (c.daily_cap_factor <= 0.0) throw std::invalid_argument("daily_cap_factor must be positive");
}

}  // namespace

InstanceDocument synthesize_finance(const BenchmarkInstance& b, std::uint64_t seed, const FinanceConfig& cfg)
{
  check_config(cfg);
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return static_cast<double>(std::uniform_int_distribution<int>(lo, hi)(rng)); };

  InstanceDocument doc;
  Project& p = doc.project;
  p.name = std::string(to_string(b.dialect)) + "-" + std::to_string(b.declared_jobs) + "-seed" + std::to_string(seed);
  for (int k = 0; k < b.declared_renewable; ++k) {
    p.pricing.renewable.push_back(draw(cfg.renewable_price_min, cfg.renewable_price_max));
  }
  for (int l = 0; l < b.declared_nonrenewable; ++l) {
    p.pricing.nonrenewable.push_back(draw(cfg.nonrenewable_price_min, cfg.nonrenewable_price_max));
  }
  const int R = b.declared_renewable, N = b.declared_nonrenewable;
  const int n = static_cast<int>(b.jobs.size());

  std::vector<std::vector<std::string>> preds(n);
  for (const auto& j : b.jobs) {
    for (int s : j.successors) preds[s - 1].push_back(std::to_string(j.number));
  }
  double total_cost = 0.0;
  double peak_nonrenewable = 0.0;
  for (int i = 0; i < n; ++i) {
    const BenchmarkJob& j = b.jobs[i];
    Activity a;
    a.id = std::to_string(j.number);
    a.name = "job " + a.id;
    a.predecessors = preds[i];
    bool empty = true;
    for (const auto& m : j.modes) {
      empty = empty && m.duration == 0 && std::all_of(m.renewable.begin(), m.renewable.end(), [](int x) { return x == 0; }) &&
              std::all_of(m.nonrenewable.begin(), m.nonrenewable.end(), [](int x) { return x == 0; });
    }
    if ((i == 0 || i == n - 1) && empty) {
      a.is_dummy = true;
      a.modes.push_back(Mode{NivtfNumber::crisp(0.0), 0.0, std::vector<NivtfNumber>(R, NivtfNumber::crisp(0.0)),
                             std::vector<NivtfNumber>(N, NivtfNumber::crisp(0.0))});
      p.activities.push_back(std::move(a));
      continue;
    }
    double cheapest = -1.0;
    for (const auto& m : j.modes) {
      Mode mode;
      mode.duration = spread(m.duration, cfg.duration_spread_lower, cfg.duration_spread_upper);
      double cost = 0.0;
      for (int k = 0; k < R; ++k) {
        mode.renewable.push_back(spread(m.renewable[k], cfg.resource_spread_lower, cfg.resource_spread_upper));
        cost += m.duration * m.renewable[k] * p.pricing.renewable[k];
      }
      double daily_nonrenewable = 0.0;
      for (int l = 0; l < N; ++l) {
        // Totals become per-day rates over the crisp duration.
        const double per_day = m.duration > 0 ? static_cast<double>(m.nonrenewable[l]) / m.duration : 0.0;
        mode.nonrenewable.push_back(spread(per_day, cfg.resource_spread_lower, cfg.resource_spread_upper));
        cost += per_day * m.duration * p.pricing.nonrenewable[l];
        daily_nonrenewable += per_day * p.pricing.nonrenewable[l];
      }
      peak_nonrenewable = std::max(peak_nonrenewable, daily_nonrenewable);
      mode.payment = cents((1.0 + cfg.markup) * cost);
      cheapest = cheapest < 0.0 ? cost : std::min(cheapest, cost);
      a.modes.push_back(std::move(mode));
    }
    total_cost += std::max(cheapest, 0.0);
    p.activities.push_back(std::move(a));
  }

  p.horizon = static_cast<int>(std::ceil(b.horizon * (1.0 + cfg.duration_spread_upper)));
  p.periods = PeriodGrid::uniform(p.horizon, cfg.period_length);

  double renewable_at_capacity = 0.0;
  for (int k = 0; k < R; ++k) renewable_at_capacity += b.renewable_capacity[k] * p.pricing.renewable[k];
  p.pricing.daily_cap =
      std::ceil(cfg.daily_cap_factor * (1.0 + cfg.resource_spread_upper) * (renewable_at_capacity + peak_nonrenewable));

  FinanceParams& f = p.finance;
  f.initial_capital = std::round(cfg.capital_fraction * total_cost);
  f.max_long_loan = std::round(cfg.long_loan_fraction * total_cost);
  f.max_short_loan = std::round(cfg.short_loan_fraction * total_cost);
  f.min_cash = cfg.min_cash;
  f.r_excess = cfg.r_excess;
  f.r_delay = cfg.r_delay;
  f.r_long = cfg.r_long;
  f.r_short = cfg.r_short;
  f.compounding_days = cfg.compounding_days;

  doc.notes["/"] = std::string("converted from a ") + to_string(b.dialect) + " file with seed " + std::to_string(seed);
  doc.notes["/resources"] = "unit prices drawn uniformly from the configured integer ranges";
  doc.notes["/finance"] = "caps scaled to the total cheapest-mode resource cost";
  doc.notes["/activities"] = "payments are (1 + markup) times the crisp mode cost";
  doc.diagnostics = validate_project(p);
  return doc;
}

}  // namespace cashsched
