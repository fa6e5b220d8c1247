#include "k1lab/serialize.hpp"

#include <algorithm>
#include <set>

namespace k1lab {

using nlohmann::json;

json series_to_json(const SeriesRing& S, const TruncSeries& a) {
  json out = json::array();
  for (const auto& [idx, c] : a.terms) {
    auto e = S.exponents(idx);
    json x = json::array();
    for (unsigned j = 0; j < S.r(); ++j) x.push_back(e[j]);
    json coords = json::array();
    for (unsigned i = 0; i < S.prime().f(); ++i) coords.push_back(c.c[i]);
    out.push_back({{"x", std::move(x)}, {"t", e[S.r()]}, {"c", std::move(coords)}});
  }
  return out;
}

TruncSeries series_from_json(const SeriesRing& S, const json& j) {
  std::vector<std::pair<std::uint32_t, PadicScalar>> terms;
  for (const auto& term : j) {
    std::vector<unsigned> exps = term.at("x").get<std::vector<unsigned>>();
    if (exps.size() != S.r()) raise(ErrorKind::DimensionMismatch, "wrong number of X exponents");
    exps.push_back(term.at("t").get<unsigned>());
    const int idx = S.index_of(exps);
    if (idx < 0) raise(ErrorKind::DimensionMismatch, "monomial outside the truncation");
    const auto coords = term.at("c").get<std::vector<u64>>();
    if (coords.size() != S.prime().f()) raise(ErrorKind::DimensionMismatch, "wrong coordinate count");
    terms.emplace_back(static_cast<std::uint32_t>(idx), S.prime().from_coords(coords));
  }
  return S.from_terms(std::move(terms));
}

json element_to_json(const GroupRing& R, const Elt& a) {
  json out = json::array();
  for (std::size_t g = 0; g < a.size(); ++g)
    if (!a[g].is_zero()) out.push_back({{"g", g}, {"terms", series_to_json(R.series(), a[g])}});
  return out;
}

Elt element_from_json(const GroupRing& R, const json& j) {
  Elt a = R.zero();
  for (const auto& slot : j) {
    const int g = slot.at("g").get<int>();
    if (g < 0 || g >= R.size()) raise(ErrorKind::DimensionMismatch, "group index out of range");
    R.add_term(a, g, series_from_json(R.series(), slot.at("terms")));
  }
  return a;
}

// ---- RunConfig ----

namespace {

// Field-level failure; the key is used to locate the line.
struct FieldError {
  std::string key;
  std::string message;
};

json group_to_json(const GroupSpec& g) {
  if (!g.catalog.empty()) return g.catalog;
  return {{"cayley", g.cayley}, {"sigma", g.sigma}, {"e", g.e}};
}

GroupSpec group_from_json(const json& j) {
  GroupSpec g;
  if (j.is_string()) {
    g.catalog = j.get<std::string>();
    return g;
  }
  if (!j.is_object()) throw FieldError{"group", "expected a catalog name or an object"};
  for (const auto& [k, v] : j.items())
    if (k != "cayley" && k != "sigma" && k != "e") throw FieldError{k, "unknown group key"};
  try {
    g.cayley = j.at("cayley").get<std::vector<std::vector<int>>>();
    g.sigma = j.at("sigma").get<std::vector<int>>();
    g.e = j.value("e", 1u);
  } catch (const json::exception& e) {
    throw FieldError{"group", e.what()};
  }
  return g;
}

template <class T>
void read_field(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw FieldError{key, "wrong type"};
  }
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void parse_fail(std::string_view text, std::size_t offset, const std::string& msg) {
  auto [line, col] = line_col(text, offset);
  std::size_t begin = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  begin = begin == std::string_view::npos ? 0 : begin + 1;
  std::size_t end = text.find('\n', begin);
  if (end == std::string_view::npos) end = text.size();
  raise(ErrorKind::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg +
                                   "\n  " + std::string(text.substr(begin, end - begin)));
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw FieldError{"", "config must be a JSON object"};
  static const std::set<std::string> known = {"p", "f", "N", "guard", "r", "D", "D_T", "group",
                                              "seed", "samples", "suites", "mutate", "out"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw FieldError{k, "unknown key '" + k + "'"};
  RunConfig c;
  read_field(j, "p", c.p);
  read_field(j, "f", c.f);
  read_field(j, "N", c.N);
  read_field(j, "guard", c.guard);
  read_field(j, "r", c.r);
  read_field(j, "D", c.D);
  read_field(j, "D_T", c.D_T);
  read_field(j, "seed", c.seed);
  read_field(j, "samples", c.samples);
  read_field(j, "suites", c.suites);
  read_field(j, "mutate", c.mutate);
  read_field(j, "out", c.out);
  if (auto it = j.find("group"); it != j.end()) c.group = group_from_json(*it);
  return c;
}

}  // namespace

json to_json(const RunConfig& c) {
  return {{"p", c.p},           {"f", c.f},       {"N", c.N},
          {"guard", c.guard},   {"r", c.r},       {"D", c.D},
          {"D_T", c.D_T},       {"group", group_to_json(c.group)},
          {"seed", c.seed},     {"samples", c.samples},
          {"suites", c.suites}, {"mutate", c.mutate},
          {"out", c.out}};
}

RunConfig run_config_from_json(const json& j) {
  try {
    return config_from_json(j);
  } catch (const FieldError& e) {
    raise(ErrorKind::ParseError, (e.key.empty() ? "" : "field '" + e.key + "': ") + e.message);
  }
}

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(text, e.byte == 0 ? 0 : e.byte - 1, "malformed JSON");
  }
  RunConfig c;
  try {
    c = config_from_json(j);
  } catch (const FieldError& e) {
    std::size_t at = e.key.empty() ? 0 : text.find("\"" + e.key + "\"");
    if (at == std::string_view::npos) at = 0;
    parse_fail(text, at, (e.key.empty() ? "" : "field '" + e.key + "': ") + e.message);
  }
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  auto bad = [](const std::string& m) { raise(ErrorKind::InvalidConfig, m); };
  if (c.N < 1 || c.N > 8) bad("N must lie in [1, 8]");
  if (c.D > 6) bad("D must be at most 6");
  if (c.D_T > 6) bad("D_T must be at most 6");
  if (c.r > 3) bad("r must be at most 3");
  if (c.f < 1 || c.f > kMaxDegree) bad("f must lie in [1, 3]");
  if (c.p < 2) bad("p must be a prime");
  unsigned __int128 mod = 1;
  for (unsigned i = 0; i < c.N + c.guard; ++i) {
    mod *= c.p;
    if (mod >= (static_cast<unsigned __int128>(1) << 62)) bad("p^(N+guard) must stay below 2^62");
  }
  for (const auto& s : c.suites)
    if (std::ranges::find(all_suites(), s) == all_suites().end()) bad("unknown suite '" + s + "'");
  std::size_t h = 0;
  unsigned e = c.group.e;
  if (!c.group.catalog.empty()) {
    GroupSpec spec = catalog_spec(c.group.catalog, c.p);
    h = spec.cayley.size();
    e = spec.e;
  } else {
    h = c.group.cayley.size();
  }
  std::size_t order = h;
  for (unsigned i = 0; i < e; ++i) order *= c.p;
  if (order > 81) bad("group order must be at most 81");
}

// ---- Report ----

bool Report::all_pass() const noexcept {
  return std::ranges::all_of(checks, [](const CheckRecord& r) { return r.pass(); });
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"suite", c.suite},     {"name", c.name},         {"ids", c.ids},
              {"samples", c.samples}, {"failures", c.failures}, {"pass", c.pass()}};
    if (!c.witness.is_null()) e["witness"] = c.witness;
    checks.push_back(std::move(e));
  }
  return {{"schema", kReportSchema},
          {"config", to_json(r.config)},
          {"group",
           {{"name", r.group.name},
            {"order", r.group.order},
            {"subgroups", r.group.subgroups},
            {"subgroup_labels", r.group.subgroup_labels}}},
          {"seed", r.config.seed},
          {"checks", std::move(checks)},
          {"timing", r.timing}};
}

Report report_from_json(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kReportSchema)
      raise(ErrorKind::ParseError, "unsupported report schema");
    Report r;
    r.config = run_config_from_json(j.at("config"));
    const json& g = j.at("group");
    r.group.name = g.at("name").get<std::string>();
    r.group.order = g.at("order").get<int>();
    r.group.subgroups = g.at("subgroups").get<int>();
    r.group.subgroup_labels = g.at("subgroup_labels").get<std::vector<std::string>>();
    for (const auto& e : j.at("checks")) {
      CheckRecord c;
      c.suite = e.at("suite").get<std::string>();
      c.name = e.at("name").get<std::string>();
      c.ids = e.at("ids").get<std::vector<int>>();
      c.samples = e.at("samples").get<unsigned>();
      c.failures = e.at("failures").get<unsigned>();
      if (auto it = e.find("witness"); it != e.end()) c.witness = *it;
      r.checks.push_back(std::move(c));
    }
    r.timing = j.at("timing").get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    raise(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace k1lab
