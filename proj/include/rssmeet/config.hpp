#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rssmeet {

/// Configuration problem tied to one key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Flat key=value configuration. '#' starts a comment; later assignments
// override earlier ones.
class ConfigMap {
 public:
  static ConfigMap parse(std::string_view text, std::string_view origin = "<string>");
  static ConfigMap load(const std::string& path);

  /// Applies one "key=value" override.
  void set(std::string_view assignment);
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& raw(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  unsigned long long get_uint(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

std::string trim(std::string_view s);

}  // namespace rssmeet
