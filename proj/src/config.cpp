#include "rssmeet/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rssmeet {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

ConfigMap ConfigMap::parse(std::string_view text, std::string_view origin) {
  ConfigMap out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos || trim(trimmed.substr(0, eq)).empty()) {
      throw std::runtime_error(std::string(origin) + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
    }
    out.values_[trim(trimmed.substr(0, eq))] = trim(trimmed.substr(eq + 1));
  }
  return out;
}

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

void ConfigMap::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || trim(assignment.substr(0, eq)).empty())
    throw std::runtime_error("override '" + std::string(assignment) + "' is not key=value");
  values_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

const std::string& ConfigMap::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing");
  return it->second;
}

namespace {

template <class T>
T parse_number(const std::string& key, std::string_view text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ConfigError(key, "cannot parse '" + std::string(text) + "' as a number");
  return value;
}

}  // namespace

double ConfigMap::get_double(const std::string& key) const {
  return parse_number<double>(key, raw(key));
}

long long ConfigMap::get_int(const std::string& key) const {
  const auto& text = raw(key);
  // Accept integral values written in scientific notation, e.g. 1e6.
  if (text.find_first_of(".eE") != std::string::npos) {
    const double v = parse_number<double>(key, text);
    if (v != static_cast<double>(static_cast<long long>(v)))
      throw ConfigError(key, "expected an integer, got '" + text + "'");
    return static_cast<long long>(v);
  }
  return parse_number<long long>(key, text);
}

unsigned long long ConfigMap::get_uint(const std::string& key) const {
  return parse_number<unsigned long long>(key, raw(key));
}

std::vector<std::string> ConfigMap::get_list(const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream ss(raw(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<double> ConfigMap::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : get_list(key)) out.push_back(parse_number<double>(key, item));
  return out;
}

}  // namespace rssmeet
