#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace jointboost {

/// Structured key-value configuration text:
///
///   # comment
///   n = 500          # trailing comments allowed
///   grid_long = 60, 180, 300
///
/// One `key = value` pair per line; keys are [A-Za-z0-9_]+ and may appear
/// once; '#' starts a comment; blank lines are ignored. Values keep inner
/// spaces but are trimmed at both ends. Typed getters convert on access and
/// report the key and line on failure. Every get marks its key as consumed;
/// after a command has read everything it understands, fail_on_unused()
/// rejects leftover (unknown or misspelled) keys.
class KeyValueConfig {
 public:
  /// Empty configuration (all getters return their defaults).
  KeyValueConfig() = default;

  /// Throws validation_error listing every malformed line.
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  /// Accepts true/false, yes/no, 1/0 (case-sensitive).
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated doubles / integers; an absent key yields the fallback.
  std::vector<double> get_doubles(const std::string& key,
                                  std::vector<double> fallback) const;
  std::vector<int> get_ints(const std::string& key, std::vector<int> fallback) const;

  /// Keys present in the file but never fetched, sorted.
  std::vector<std::string> unused_keys() const;
  /// Throws validation_error naming every unused key.
  void fail_on_unused() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string origin_ = "<empty>";
  std::map<std::string, Entry> entries_;
  mutable std::set<std::string> consumed_;

  const Entry* find(const std::string& key) const;
  [[noreturn]] void bad_value(const std::string& key, const Entry& entry,
                              const std::string& expected) const;
};

}  // namespace jointboost
