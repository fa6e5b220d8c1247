// k1lab: batch driver for the congruence suites.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "k1lab/runner.hpp"

namespace {

using namespace k1lab;

constexpr int kExitFailures = 1;
constexpr int kExitBadConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::InvalidConfig, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Overrides {
  std::string config;
  std::optional<unsigned> p, samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> group, suites, out;
  bool mutate = false;
};

RunConfig load(const Overrides& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : parse_run_config(read_file(o.config));
  if (o.p) cfg.p = *o.p;
  if (o.samples) cfg.samples = *o.samples;
  if (o.seed) cfg.seed = *o.seed;
  if (o.group) cfg.group = GroupSpec{*o.group, {}, {}, 1};
  if (o.suites) cfg.suites = split_list(*o.suites);
  if (o.out) cfg.out = *o.out;
  if (o.mutate) cfg.mutate = true;
  validate(cfg);
  return cfg;
}

int verify(const Overrides& o) {
  const RunConfig cfg = load(o);
  const Report rep = run_suites(cfg);
  const std::string text = to_json(rep).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(cfg.out) << text;
  }
  std::size_t failed = 0;
  for (const auto& c : rep.checks)
    if (!c.pass()) {
      ++failed;
      std::cerr << "FAIL " << c.suite << "/" << c.name << " " << nlohmann::json(c.ids).dump()
                << " " << c.failures << "/" << c.samples << "\n";
    }
  std::cerr << rep.group.name << ": " << rep.checks.size() << " checks, " << failed << " failed, "
            << rep.timing.at("total") << " s\n";
  return failed == 0 ? 0 : kExitFailures;
}

int gen_unit(const Overrides& o, std::uint64_t index) {
  const RunConfig cfg = load(o);
  const auto ctx = make_context(engine_config(cfg), build_group(cfg));
  std::cout << element_to_json(ctx->ring(), sample_unit(ctx->ring(), cfg.seed, index)).dump()
            << "\n";
  return 0;
}

int catalog_list(unsigned p) {
  for (const auto& name : catalog_names(p)) {
    const auto model = GroupModel::build(GroupSpec{name, {}, {}, 1}, p);
    std::cout << name << "\torder " << model->order() << "\tsubgroups "
              << model->subgroups().size() << "\n";
  }
  return 0;
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--p", o.p, "prime");
  cmd->add_option("--group", o.group, "catalog group name");
  cmd->add_option("--seed", o.seed, "sampling seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k1lab: congruence checks for K1 of twisted group rings"};
  app.require_subcommand(1);

  Overrides ov;
  auto* verify_cmd = app.add_subcommand("verify", "run the configured suites and write a report");
  add_overrides(verify_cmd, ov);
  verify_cmd->add_option("--suites", ov.suites, "comma separated suite list");
  verify_cmd->add_option("--samples", ov.samples, "samples per suite");
  verify_cmd->add_option("--out", ov.out, "report path (stdout when empty)");
  verify_cmd->add_flag("--mutate", ov.mutate, "perturb one tuple component before checking");

  std::uint64_t index = 0;
  auto* gen_cmd = app.add_subcommand("gen-unit", "print a reproducible random unit");
  add_overrides(gen_cmd, ov);
  gen_cmd->add_option("--index", index, "sample index");

  unsigned catalog_p = 3;
  auto* catalog_cmd = app.add_subcommand("catalog", "group catalog");
  auto* list_cmd = catalog_cmd->add_subcommand("list", "list catalog groups");
  list_cmd->add_option("--p", catalog_p, "prime");
  catalog_cmd->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify_cmd) return verify(ov);
    if (*gen_cmd) return gen_unit(ov, index);
    if (*list_cmd) return catalog_list(catalog_p);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return 0;
}
