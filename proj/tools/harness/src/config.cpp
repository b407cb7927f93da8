#include "harness/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace harness {

namespace {

[[noreturn]] void type_error(const std::string& key, const char* wanted) {
  throw ConfigError("config key '" + key + "' must be " + wanted);
}

}  // namespace

Config::Config(nlohmann::json doc) : doc_(std::move(doc)) {
  if (!doc_.is_object()) {
    throw ConfigError("config document must be a JSON object");
  }
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

Config Config::from_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config is not valid JSON");
  return Config(std::move(doc));
}

void Config::override_int(const std::string& key, long long value) {
  doc_[key] = value;
}

const nlohmann::json& Config::fetch(const std::string& key) {
  consumed_.insert(key);
  static const nlohmann::json missing;
  const auto it = doc_.find(key);
  return it == doc_.end() ? missing : *it;
}

double Config::get_double(const std::string& key, double fallback) {
  const auto& v = fetch(key);
  if (v.is_null()) return fallback;
  if (!v.is_number()) type_error(key, "a number");
  return v.get<double>();
}

long long Config::get_int(const std::string& key, long long fallback) {
  const auto& v = fetch(key);
  if (v.is_null()) return fallback;
  if (!v.is_number_integer()) type_error(key, "an integer");
  return v.get<long long>();
}

std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t fallback) {
  const auto& v = fetch(key);
  if (v.is_null()) return fallback;
  if (!v.is_number_integer()) type_error(key, "an integer");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const long long s = v.get<long long>();
  if (s < 0) type_error(key, "a nonnegative integer");
  return static_cast<std::uint64_t>(s);
}

bool Config::get_bool(const std::string& key, bool fallback) {
  const auto& v = fetch(key);
  if (v.is_null()) return fallback;
  if (!v.is_boolean()) type_error(key, "a boolean");
  return v.get<bool>();
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) {
  const auto& v = fetch(key);
  if (v.is_null()) return fallback;
  if (!v.is_string()) type_error(key, "a string");
  return v.get<std::string>();
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            std::vector<double> fallback) {
  const auto& v = fetch(key);
  if (v.is_null()) return fallback;
  if (!v.is_array()) type_error(key, "an array of numbers");
  std::vector<double> out;
  for (const auto& item : v) {
    if (!item.is_number()) type_error(key, "an array of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

std::vector<long long> Config::get_int_list(const std::string& key,
                                            std::vector<long long> fallback) {
  const auto& v = fetch(key);
  if (v.is_null()) return fallback;
  if (!v.is_array()) type_error(key, "an array of integers");
  std::vector<long long> out;
  for (const auto& item : v) {
    if (!item.is_number_integer()) type_error(key, "an array of integers");
    out.push_back(item.get<long long>());
  }
  return out;
}

void Config::finish() const {
  std::string unknown;
  for (auto it = doc_.begin(); it != doc_.end(); ++it) {
    if (consumed_.count(it.key()) == 0) {
      if (!unknown.empty()) unknown += ", ";
      unknown += it.key();
    }
  }
  if (!unknown.empty()) {
    throw ConfigError("unknown config keys: " + unknown);
  }
}

int resolve_threads(long long requested) {
  if (requested > 0) return static_cast<int>(requested);
  if (const char* env = std::getenv("EVTOOL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace harness
