#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace inducedym::cli {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string format = "auto";
};

// What a subcommand produced. `json` is always filled; `header`/`rows` when the
// result is naturally tabular. `prefer_csv` picks the format when --format is auto.
struct Output {
  nlohmann::json json;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool prefer_csv = false;
};

using Action = std::function<Output()>;

// Registers every subcommand; the one selected on the command line stores its action.
void register_commands(CLI::App& app, Globals& globals, Action& selected);

std::string fmt(double x);

}  // namespace inducedym::cli
