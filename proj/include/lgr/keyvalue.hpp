#pragma once

// Flat `section.key = value` text files, used for both scenario configs and
// species parameter files. `#` starts a comment; blank lines are ignored.

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgr {

/// Error tied to a configuration key (or file) so callers can report it.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(',', start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

class KeyValueFile {
public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static KeyValueFile parse(std::istream& in, const std::string& origin = "<input>") {
    KeyValueFile kv;
    kv.origin_ = origin;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view line(raw);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("", origin + ":" + std::to_string(line_no) + ": expected `key = value`");
      }
      const std::string key(detail::trim(line.substr(0, eq)));
      if (key.empty()) throw ConfigError("", origin + ":" + std::to_string(line_no) + ": empty key");
      if (kv.entries_.contains(key)) throw ConfigError(key, "duplicate key at " + origin + ":" + std::to_string(line_no));
      kv.entries_[key] = Entry{std::string(detail::trim(line.substr(eq + 1))), line_no};
    }
    return kv;
  }

  static KeyValueFile parse_string(const std::string& text, const std::string& origin = "<string>") {
    std::istringstream in(text);
    return parse(in, origin);
  }

  static KeyValueFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open file: " + path);
    return parse(in, path);
  }

  bool has(const std::string& key) const { return entries_.contains(key); }
  const std::string& origin() const { return origin_; }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  void set(const std::string& key, std::string value) { entries_[key] = Entry{std::move(value), 0}; }

  const std::string& raw(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(key, "missing required key in " + origin_);
    return it->second.value;
  }

  double get_double(const std::string& key) const { return to_double(key, raw(key)); }
  double get_double(const std::string& key, double fallback) const { return has(key) ? get_double(key) : fallback; }
  int get_int(const std::string& key) const { return to_int(key, raw(key)); }
  int get_int(const std::string& key, int fallback) const { return has(key) ? get_int(key) : fallback; }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

  bool get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError(key, "expected a boolean, got `" + v + "`");
  }

  std::vector<double> get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& piece : detail::split_list(raw(key))) out.push_back(to_double(key, piece));
    return out;
  }

  std::vector<int> get_int_list(const std::string& key) const {
    std::vector<int> out;
    for (const auto& piece : detail::split_list(raw(key))) out.push_back(to_int(key, piece));
    return out;
  }

  /// Accepts `3/2`, `-1/2`, `1` or `0.5`; returns twice the value.
  int get_twice_half_integer(const std::string& key) const { return parse_twice_half(key, raw(key)); }

  static int parse_twice_half(const std::string& key, const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const int num = to_int(key, std::string(detail::trim(std::string_view(text).substr(0, slash))));
      const int den = to_int(key, std::string(detail::trim(std::string_view(text).substr(slash + 1))));
      if (den == 2) return num;
      if (den == 1) return 2 * num;
      throw ConfigError(key, "expected a half-integer, got `" + text + "`");
    }
    const double v = to_double(key, text);
    const double t = 2.0 * v;
    if (t != static_cast<double>(static_cast<long>(t))) {
      throw ConfigError(key, "expected a half-integer, got `" + text + "`");
    }
    return static_cast<int>(t);
  }

  static double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    if (!text.empty() && *b == '+') ++b;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e) throw ConfigError(key, "expected a number, got `" + text + "`");
    return v;
  }

  static int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const char* b = text.data();
    const char* e = b + text.size();
    if (!text.empty() && *b == '+') ++b;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e) throw ConfigError(key, "expected an integer, got `" + text + "`");
    return v;
  }

private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

}  // namespace lgr
