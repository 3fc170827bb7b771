#include "commands.hpp"

#include "inducedym/errors.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using inducedym::cli::Output;

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render(const Output& o, const std::string& format) {
  const bool csv = format == "csv" || (format == "auto" && o.prefer_csv && !o.rows.empty());
  std::ostringstream ss;
  if (!csv) {
    ss << o.json.dump(2) << "\n";
    return ss.str();
  }
  if (!o.rows.empty()) {
    for (std::size_t i = 0; i < o.header.size(); ++i) ss << (i ? "," : "") << csv_escape(o.header[i]);
    ss << "\n";
    for (auto& r : o.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) ss << (i ? "," : "") << csv_escape(r[i]);
      ss << "\n";
    }
    return ss.str();
  }
  // scalar report: key,value rows for top-level scalars
  ss << "key,value\n";
  for (auto& [k, v] : o.json.items()) {
    if (v.is_structured()) continue;
    ss << csv_escape(k) << "," << csv_escape(v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return ss.str();
}

int emit_error(const std::string& module, const std::string& code, const std::string& message) {
  nlohmann::json e = {{"error", {{"code", module + "." + code}, {"module", module}, {"message", message}}}};
  std::cout << e.dump(2) << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Induced lattice U(N) gauge model toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML configuration file; command-line flags override it");
  inducedym::cli::Globals globals;
  app.add_option("--seed", globals.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", globals.threads, "Worker thread cap")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", globals.out, "Write output to this file instead of stdout");
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"auto", "csv", "json"}))->capture_default_str();

  inducedym::cli::Action action;
  inducedym::cli::register_commands(app, globals, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("cli", "usage", e.what());
    return 2;
  }

  try {
    const Output out = action();
    const std::string text = render(out, globals.format);
    if (globals.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(globals.out);
      if (!f) return emit_error("cli", "io", "cannot write '" + globals.out + "'");
      f << text;
    }
    return 0;
  } catch (const inducedym::Error& e) {
    return emit_error(e.module(), e.code(), e.what());
  } catch (const std::exception& e) {
    return emit_error("cli", "internal", e.what());
  }
}
