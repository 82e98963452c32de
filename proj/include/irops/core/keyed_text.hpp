#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace irops {

/// Ordered `key = value` document. Blank lines and lines starting with '#'
/// are ignored on read. Keys may contain spaces; the first '=' separates the
/// key from the value and both sides are trimmed.
class KeyedText {
 public:
  using Entry = std::pair<std::string, std::string>;

  static KeyedText parse(std::string_view text);
  static KeyedText read_file(const std::filesystem::path& path);

  [[nodiscard]] std::string to_string() const;

  /// Replaces an existing key in place or appends a new one.
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::int64_t value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, int value) { set(key, static_cast<std::int64_t>(value)); }
  void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

  [[nodiscard]] bool contains(std::string_view key) const;
  [[nodiscard]] std::optional<std::string> find(std::string_view key) const;

  /// Typed getters throw ConfigError naming the key when it is missing or malformed.
  [[nodiscard]] std::string get_string(std::string_view key) const;
  [[nodiscard]] double get_double(std::string_view key) const;
  [[nodiscard]] std::int64_t get_int(std::string_view key) const;
  [[nodiscard]] std::uint64_t get_uint(std::string_view key) const;
  [[nodiscard]] bool get_bool(std::string_view key) const;

  [[nodiscard]] std::string get_string(std::string_view key, std::string fallback) const;
  [[nodiscard]] double get_double(std::string_view key, double fallback) const;
  [[nodiscard]] std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  [[nodiscard]] std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  [[nodiscard]] bool get_bool(std::string_view key, bool fallback) const;

  /// Entries whose key starts with `prefix`, with the prefix stripped.
  [[nodiscard]] std::vector<Entry> with_prefix(std::string_view prefix) const;

  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace irops
