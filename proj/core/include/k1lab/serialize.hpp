#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "k1lab/groupring.hpp"

namespace k1lab {

inline constexpr const char* kReportSchema = "k1lab/1";

// Series as [{"x": [..], "t": k, "c": [..]}], sorted by monomial index.
nlohmann::json series_to_json(const SeriesRing& S, const TruncSeries& a);
TruncSeries series_from_json(const SeriesRing& S, const nlohmann::json& j);
// Element as [{"g": index, "terms": series}], sorted by group index, zero slots omitted.
nlohmann::json element_to_json(const GroupRing& R, const Elt& a);
Elt element_from_json(const GroupRing& R, const nlohmann::json& j);

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {
      "c1c4", "additive", "diagrams", "specialization", "torsion", "arithmetic-properties"};
  return names;
}

struct RunConfig {
  unsigned p = 3;
  unsigned f = 1;
  unsigned N = 4;
  unsigned guard = 14;
  unsigned r = 1;
  unsigned D = 3;
  unsigned D_T = 3;
  GroupSpec group = {"Heisenberg27", {}, {}, 1};
  std::uint64_t seed = 1;
  unsigned samples = 50;
  std::vector<std::string> suites = all_suites();
  bool mutate = false;
  std::string out;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);
// Parses and validates; ParseError carries line:column of the offending token or key.
RunConfig parse_run_config(std::string_view text);
// Desk-scale bounds and catalog lookup; InvalidConfig on violation.
void validate(const RunConfig& c);

struct CheckRecord {
  std::string suite;
  std::string name;
  std::vector<int> ids;
  unsigned samples = 0;
  unsigned failures = 0;
  nlohmann::json witness;  // first failing witness, null when none
  bool pass() const noexcept { return failures == 0; }
};

struct GroupInfo {
  std::string name;
  int order = 0;
  int subgroups = 0;
  std::vector<std::string> subgroup_labels;
};

struct Report {
  RunConfig config;
  GroupInfo group;
  std::vector<CheckRecord> checks;
  std::map<std::string, double> timing;  // seconds per suite and "total"
  bool all_pass() const noexcept;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

}  // namespace k1lab
