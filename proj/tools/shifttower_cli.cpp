#include "shifttower/errors.hpp"
#include "shifttower/job.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace shifttower;

int main(int argc, char** argv) {
  CLI::App app{"Shift towers from finite-dimensional algebras: relations, commutants, entropy bounds"};
  app.require_subcommand(1, 1);

  std::string config_path, out_path;
  std::optional<unsigned> seed;
  std::optional<long long> dense_cap;
  std::optional<int> window, truncation;
  bool quiet = false;

  for (const char* name : {"verify", "commutant", "entropy", "oracle", "all"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " pipeline");
    sub->add_option("--config", config_path, "JSON job config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "write the JSON report here (default: stdout)");
    sub->add_option("--seed", seed, "seed for randomized probes");
    sub->add_option("--dense-cap", dense_cap, "largest dense matrix dimension for the oracle");
    sub->add_option("--window", window, "commutant window m");
    sub->add_option("--truncation", truncation, "tower truncation K");
    sub->add_flag("--quiet", quiet, "suppress the summary on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  const std::string cmd_name = app.get_subcommands().front()->get_name();
  JobResult result;
  try {
    nlohmann::json doc;
    {
      std::ifstream in(config_path);
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("config is not valid JSON: ") + e.what());
      }
    }
    JobConfig cfg = parse_config(doc);
    if (seed) cfg.seed = *seed;
    if (dense_cap) cfg.dense_cap = *dense_cap;
    if (window) cfg.window = *window;
    if (truncation) cfg.truncation = *truncation;
    if (cfg.effective_window() < std::max(cfg.depth, 1)) throw SpecError("window must be >= max(depth, 1)");
    if (cfg.effective_truncation() < cfg.effective_window()) throw SpecError("truncation must be >= window");
    result = run_job(cfg, parse_command(cmd_name));
  } catch (const SpecError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  const std::string text = result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitInternal;
    }
    out << text;
  }
  if (!quiet) std::cerr << summarize(result.report);
  return result.exit_code;
}
