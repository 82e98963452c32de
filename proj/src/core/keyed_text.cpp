#include "irops/core/keyed_text.hpp"

#include <fstream>
#include <sstream>

#include "irops/core/error.hpp"
#include "irops/core/text.hpp"

namespace irops {

KeyedText KeyedText::parse(std::string_view text) {
  KeyedText doc;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("keyed text line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = text::trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("keyed text line " + std::to_string(line_no) + ": empty key");
    }
    doc.set(std::string(key), std::string(text::trim(line.substr(eq + 1))));
  }
  return doc;
}

KeyedText KeyedText::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string KeyedText::to_string() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

void KeyedText::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void KeyedText::set(const std::string& key, double value) { set(key, text::format_double(value)); }
void KeyedText::set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }
void KeyedText::set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }

bool KeyedText::contains(std::string_view key) const { return find(key).has_value(); }

std::optional<std::string> KeyedText::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) {
      return v;
    }
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void malformed(std::string_view key, const std::string& value, const char* type) {
  throw ConfigError("key '" + std::string(key) + "': cannot parse '" + value + "' as " + type);
}

}  // namespace

std::string KeyedText::get_string(std::string_view key) const {
  auto v = find(key);
  if (!v) {
    throw ConfigError("missing key '" + std::string(key) + "'");
  }
  return *v;
}

double KeyedText::get_double(std::string_view key) const {
  const auto v = get_string(key);
  double out = 0.0;
  if (!text::parse_double(v, out)) {
    malformed(key, v, "number");
  }
  return out;
}

std::int64_t KeyedText::get_int(std::string_view key) const {
  const auto v = get_string(key);
  std::int64_t out = 0;
  if (!text::parse_int(v, out)) {
    malformed(key, v, "integer");
  }
  return out;
}

std::uint64_t KeyedText::get_uint(std::string_view key) const {
  const auto v = get_string(key);
  std::uint64_t out = 0;
  if (!text::parse_uint(v, out)) {
    malformed(key, v, "unsigned integer");
  }
  return out;
}

bool KeyedText::get_bool(std::string_view key) const {
  const auto v = get_string(key);
  bool out = false;
  if (!text::parse_bool(v, out)) {
    malformed(key, v, "boolean");
  }
  return out;
}

std::string KeyedText::get_string(std::string_view key, std::string fallback) const {
  return contains(key) ? get_string(key) : std::move(fallback);
}
double KeyedText::get_double(std::string_view key, double fallback) const {
  return contains(key) ? get_double(key) : fallback;
}
std::int64_t KeyedText::get_int(std::string_view key, std::int64_t fallback) const {
  return contains(key) ? get_int(key) : fallback;
}
std::uint64_t KeyedText::get_uint(std::string_view key, std::uint64_t fallback) const {
  return contains(key) ? get_uint(key) : fallback;
}
bool KeyedText::get_bool(std::string_view key, bool fallback) const {
  return contains(key) ? get_bool(key) : fallback;
}

std::vector<KeyedText::Entry> KeyedText::with_prefix(std::string_view prefix) const {
  std::vector<Entry> out;
  for (const auto& [k, v] : entries_) {
    if (k.size() > prefix.size() && std::string_view(k).substr(0, prefix.size()) == prefix) {
      out.emplace_back(k.substr(prefix.size()), v);
    }
  }
  return out;
}

}  // namespace irops
