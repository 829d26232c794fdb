#pragma once

#include "alcove/charts.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alcove::cli {

inline constexpr const char *kSchemaVersion = "1";

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int n{3};
  int f{1};
  Int p{53};
  Int q_max{0}; // 0: p^3
  int trials{100};
  std::uint64_t seed{1};
  Int t{1};
  std::string out;
  std::string format{"json"};
  bool timing{false};

  /// Field sizes p^k <= q_max, increasing.
  [[nodiscard]] auto q_degrees() const -> std::vector<int>;
  void validate() const;
};

struct Check {
  std::string name;
  bool pass{true};
  nlohmann::ordered_json detail;
  std::optional<nlohmann::ordered_json> counterexample;
};

struct Report {
  std::string command;
  nlohmann::ordered_json config;
  std::vector<Check> checks;
  nlohmann::ordered_json data;
  std::optional<double> seconds;

  [[nodiscard]] auto all_pass() const -> bool;
};

enum class Format { Json, CsvSummary };

/// `command` is e.g. "verify minors". Throws usage_error on unknown commands or bad config.
auto run(const std::string &command, const RunConfig &config) -> Report;
auto emit_report(const Report &report, Format format) -> std::string;
auto known_commands() -> const std::vector<std::string> &;

/// Fields present in `file` override `base`.
auto merge_config_file(RunConfig base, const nlohmann::json &file) -> RunConfig;

auto to_json(const ExtAffine &x) -> nlohmann::ordered_json;
auto to_json(const Weight &x) -> nlohmann::ordered_json;
auto root_name(Root r) -> std::string;

} // namespace alcove::cli
