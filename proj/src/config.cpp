#include "snnlab/config.hpp"

#include <fstream>
#include <sstream>

#include "snnlab/errors.hpp"

namespace snnlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("config not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.text_ = text;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("config " + origin + ":" + std::to_string(lineno) +
                      ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw DataError("config " + origin + ":" + std::to_string(lineno) + ": empty key");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

std::string Config::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw DataError("config " + origin_ + ": missing required key '" + key + "'");
  }
  return it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string raw = get_string(key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw DataError("config " + origin_ + ": key '" + key + "' is not a number: '" + raw + "'");
  }
  if (used != raw.size()) {
    throw DataError("config " + origin_ + ": key '" + key + "' has trailing junk: '" + raw + "'");
  }
  return v;
}

std::int64_t Config::get_int(const std::string& key) const {
  const std::string raw = get_string(key);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(raw, &used);
  } catch (const std::exception&) {
    throw DataError("config " + origin_ + ": key '" + key + "' is not an integer: '" + raw + "'");
  }
  if (used != raw.size()) {
    throw DataError("config " + origin_ + ": key '" + key + "' has trailing junk: '" + raw + "'");
  }
  return v;
}

bool Config::get_bool(const std::string& key) const {
  const std::string raw = get_string(key);
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw DataError("config " + origin_ + ": key '" + key + "' is not a boolean: '" + raw + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const std::string raw = get_string(key);
  std::vector<double> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw DataError("config " + origin_ + ": key '" + key + "' has a non-numeric item: '" +
                      item + "'");
    }
  }
  if (out.empty()) throw DataError("config " + origin_ + ": key '" + key + "' list is empty");
  return out;
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (double v : get_double_list(key)) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t Config::get_int_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

}  // namespace snnlab
