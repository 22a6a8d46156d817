#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macsim/errors.hpp"
#include "macsim/run_config.hpp"
#include "macsim/runner.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  int workers = 0;
  std::string output;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--config", opts.config_path, "configuration file");
  sub->add_option("--set", opts.overrides,
                  "override a config key, e.g. --set p=0,0.5");
  sub->add_option("--workers", opts.workers, "worker thread count");
  sub->add_option("--output", opts.output, "output path prefix");
}

int run(const std::string& kind, const CommonOptions& opts) {
  try {
    std::string text;
    if (!opts.config_path.empty()) {
      std::ifstream in(opts.config_path);
      if (!in) {
        std::cerr << "error: cannot open config file '" << opts.config_path
                  << "'\n";
        return 1;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    macsim::RunConfig config = macsim::parse_config(text);
    if (config.kind.empty()) {
      config.kind = kind;
    } else if (config.kind != kind) {
      std::cerr << "error: config kind '" << config.kind
                << "' does not match subcommand '" << kind << "'\n";
      return 1;
    }
    for (const auto& assignment : opts.overrides) {
      macsim::apply_override(config, assignment);
    }
    if (opts.workers > 0) config.workers = opts.workers;
    if (!opts.output.empty()) config.output = opts.output;
    return macsim::execute(config);
  } catch (const macsim::ParseError& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return 1;
  } catch (const macsim::ValidationError& e) {
    std::cerr << "config validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measurement-altered Ising chain simulator"};
  app.require_subcommand(1);

  CommonOptions opts;
  const char* kinds[] = {"ensemble", "toy-model", "ground-state",
                         "oracle-check"};
  const char* help[] = {
      "Monte Carlo ensemble of measurement-altered states",
      "entanglement-network toy model",
      "witnesses of the unmeasured initial state",
      "Gaussian-vs-dense cross-validation suite"};
  for (int i = 0; i < 4; ++i) {
    add_common(app.add_subcommand(kinds[i], help[i]), opts);
  }

  CLI11_PARSE(app, argc, argv);
  return run(app.get_subcommands().front()->get_name(), opts);
}
