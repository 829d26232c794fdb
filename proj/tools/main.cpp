#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using alcove::cli::RunConfig;

namespace {

struct Flags {
  int n{};
  int f{};
  alcove::Int p{}, q_max{}, t{};
  int trials{};
  std::uint64_t seed{};
  std::string out, format, config;
  bool timing{false};
};

auto read_json_file(const std::string &path) -> nlohmann::json {
  std::ifstream in(path);
  if (!in) throw alcove::cli::usage_error("cannot read config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw alcove::cli::usage_error(std::string("config file is not valid JSON: ") + e.what());
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Alcove and local model chart computations"};
  app.require_subcommand(1);
  Flags fl;
  std::map<std::string, CLI::Option *> opt;
  opt["n"] = app.add_option("--n", fl.n, "rank of GL_n");
  opt["f"] = app.add_option("--f", fl.f, "number of embeddings");
  opt["p"] = app.add_option("--p", fl.p, "prime");
  opt["q_max"] = app.add_option("--q-max", fl.q_max, "largest field size tried by witness search");
  opt["trials"] = app.add_option("--trials", fl.trials, "random trials per check");
  opt["seed"] = app.add_option("--seed", fl.seed, "random seed");
  opt["t"] = app.add_option("--t", fl.t, "witness family parameter");
  opt["out"] = app.add_option("--out", fl.out, "write the report here instead of stdout");
  opt["format"] = app.add_option("--format", fl.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  opt["timing"] = app.add_flag("--timing", fl.timing, "include wall time in the report");
  app.add_option("--config", fl.config, "JSON config file")->check(CLI::ExistingFile);

  std::string command;
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto &name : alcove::cli::known_commands()) {
    auto space = name.find(' ');
    groups[name.substr(0, space)].push_back(name.substr(space + 1));
  }
  for (const auto &[group, leaves] : groups) {
    auto *g = app.add_subcommand(group)->require_subcommand(1)->fallthrough();
    for (const auto &leaf : leaves) {
      std::string full = group + " " + leaf;
      g->add_subcommand(leaf)->fallthrough()->callback([&command, full] { command = full; });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    if (!fl.config.empty()) cfg = alcove::cli::merge_config_file(cfg, read_json_file(fl.config));
    if (opt["n"]->count()) cfg.n = fl.n;
    if (opt["f"]->count()) cfg.f = fl.f;
    if (opt["p"]->count()) cfg.p = fl.p;
    if (opt["q_max"]->count()) cfg.q_max = fl.q_max;
    if (opt["trials"]->count()) cfg.trials = fl.trials;
    if (opt["seed"]->count()) cfg.seed = fl.seed;
    if (opt["t"]->count()) cfg.t = fl.t;
    if (opt["out"]->count()) cfg.out = fl.out;
    if (opt["format"]->count()) cfg.format = fl.format;
    if (opt["timing"]->count()) cfg.timing = fl.timing;

    auto report = alcove::cli::run(command, cfg);
    auto fmt = cfg.format == "csv" ? alcove::cli::Format::CsvSummary : alcove::cli::Format::Json;
    std::string bytes = alcove::cli::emit_report(report, fmt);
    if (cfg.out.empty()) {
      std::cout << bytes;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!(out << bytes)) throw std::runtime_error("cannot write " + cfg.out);
    }
    return report.all_pass() ? 0 : 2;
  } catch (const alcove::cli::usage_error &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
