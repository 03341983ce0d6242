#include "jointboost/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jointboost/types.hpp"

namespace jointboost {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool to_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size();
}

bool to_long_long(const std::string& s, long long& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtoll(s.c_str(), &end, 10);
  return errno == 0 && end == s.c_str() + s.size();
}

bool to_uint64(const std::string& s, std::uint64_t& out) {
  if (s.empty() || s[0] == '-') return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtoull(s.c_str(), &end, 10);
  return errno == 0 && end == s.c_str() + s.size();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(trim(s.substr(start)));
      return parts;
    }
    parts.push_back(trim(s.substr(start, comma - start)));
    start = comma + 1;
  }
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text,
                                            const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::vector<std::string> issues;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    std::ostringstream where;
    where << origin << " line " << line_no << ": ";
    if (eq == std::string::npos) {
      issues.push_back(where.str() + "expected 'key = value', found '" + stripped + "'");
      continue;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!valid_key(key)) {
      issues.push_back(where.str() + "invalid key '" + key + "'");
      continue;
    }
    if (cfg.entries_.count(key)) {
      issues.push_back(where.str() + "duplicate key '" + key + "' (first on line " +
                       std::to_string(cfg.entries_[key].line) + ")");
      continue;
    }
    cfg.entries_[key] = Entry{value, line_no};
  }
  if (!issues.empty()) throw validation_error("invalid configuration", issues);
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw validation_error("invalid configuration",
                           {"cannot open '" + path + "' for reading"});
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_string(text.str(), path);
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  consumed_.insert(key);
  return &it->second;
}

void KeyValueConfig::bad_value(const std::string& key, const Entry& entry,
                               const std::string& expected) const {
  std::ostringstream os;
  os << origin_ << " line " << entry.line << ": key '" << key << "': expected " << expected
     << ", found '" << entry.value << "'";
  throw validation_error("invalid configuration", {os.str()});
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  double v = 0.0;
  if (!to_double(e->value, v)) bad_value(key, *e, "a number");
  return v;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  long long v = 0;
  if (!to_long_long(e->value, v) || v < -2147483648LL || v > 2147483647LL)
    bad_value(key, *e, "an integer");
  return static_cast<int>(v);
}

std::uint64_t KeyValueConfig::get_uint64(const std::string& key,
                                         std::uint64_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::uint64_t v = 0;
  if (!to_uint64(e->value, v)) bad_value(key, *e, "a non-negative integer");
  return v;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
  if (e->value == "false" || e->value == "no" || e->value == "0") return false;
  bad_value(key, *e, "true/false, yes/no or 1/0");
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key,
                                                std::vector<double> fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::vector<double> out;
  for (const auto& part : split_commas(e->value)) {
    double v = 0.0;
    if (!to_double(part, v)) bad_value(key, *e, "comma-separated numbers");
    out.push_back(v);
  }
  return out;
}

std::vector<int> KeyValueConfig::get_ints(const std::string& key,
                                          std::vector<int> fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  std::vector<int> out;
  for (const auto& part : split_commas(e->value)) {
    long long v = 0;
    if (!to_long_long(part, v) || v < -2147483648LL || v > 2147483647LL)
      bad_value(key, *e, "comma-separated integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : entries_) {
    if (!consumed_.count(key)) out.push_back(key);
  }
  return out;
}

void KeyValueConfig::fail_on_unused() const {
  const auto unused = unused_keys();
  if (unused.empty()) return;
  std::vector<std::string> issues;
  for (const auto& key : unused) {
    issues.push_back(origin_ + " line " + std::to_string(entries_.at(key).line) +
                     ": unknown key '" + key + "'");
  }
  throw validation_error("invalid configuration", issues);
}

}  // namespace jointboost
