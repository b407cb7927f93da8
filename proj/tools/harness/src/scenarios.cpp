#include <string>

#include "harness/scenarios.hpp"

namespace harness {

CsvTable run_scenario(const std::string& name, Config& cfg) {
  if (name == "gaussian") return run_gaussian(cfg);
  if (name == "universal-inference") return run_ui(cfg);
  if (name == "gamma") return run_gamma(cfg);
  if (name == "ebh") return run_ebh(cfg);
  throw ConfigError("unknown scenario '" + name +
                    "' (expected gaussian, universal-inference, gamma, ebh)");
}

}  // namespace harness
