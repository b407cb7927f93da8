#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace harness {

/** Raised for malformed or invalid scenario configuration. The CLI maps it
 *  to exit code 2. */
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Flat key-value configuration backed by a JSON object. Every lookup marks
 *  its key as consumed; finish() rejects unknown keys so silent
 *  misconfiguration cannot slip through. Values may be scalars or flat
 *  arrays of numbers. */
class Config {
 public:
  explicit Config(nlohmann::json doc);

  static Config from_file(const std::string& path);
  static Config from_text(const std::string& text);

  /** Inserts or overwrites a key before the runner consumes the config
   *  (used for command-line overrides such as --seed and --threads). */
  void override_int(const std::string& key, long long value);

  double get_double(const std::string& key, double fallback);
  long long get_int(const std::string& key, long long fallback);
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback);
  std::vector<long long> get_int_list(const std::string& key,
                                      std::vector<long long> fallback);

  /** Throws ConfigError naming every key that no getter consumed. Call once
   *  after all lookups. */
  void finish() const;

 private:
  const nlohmann::json& fetch(const std::string& key);

  nlohmann::json doc_;
  std::set<std::string> consumed_;
};

/** Resolves a worker count: explicit positive values win; otherwise the
 *  EVTOOL_THREADS environment variable; otherwise the hardware concurrency
 *  (at least 1). */
int resolve_threads(long long requested);

}  // namespace harness
