#include "irops/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>
#include <system_error>

#include "irops/core/error.hpp"

#ifndef IROPS_VERSION
#define IROPS_VERSION "0.0.0"
#endif

namespace irops::cli {

namespace fs = std::filesystem;

std::string_view version() noexcept { return IROPS_VERSION; }

std::string sha256_hex(std::string_view data) {
  const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                    &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

void atomic_write(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

RunManifest::RunManifest(std::string command) : command_(std::move(command)) {}

void RunManifest::set_param(const std::string& key, const std::string& value) {
  for (auto& [k, v] : params_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  params_.emplace_back(key, value);
}

void RunManifest::set_seed(const std::string& label, std::uint64_t seed) {
  for (auto& [k, v] : seeds_) {
    if (k == label) {
      v = seed;
      return;
    }
  }
  seeds_.emplace_back(label, seed);
}

void RunManifest::add_input(const fs::path& path) {
  inputs_.push_back({path.generic_string(), sha256_file(path)});
}

void RunManifest::add_output(const std::string& file_name, const std::string& sha256) {
  for (auto& e : outputs_) {
    if (e.path == file_name) {
      e.sha256 = sha256;
      return;
    }
  }
  outputs_.push_back({file_name, sha256});
}

std::string RunManifest::file_name() const { return "manifest_" + command_ + ".txt"; }

KeyedText RunManifest::to_keyed() const {
  KeyedText doc;
  doc.set("tool", std::string("irops"));
  doc.set("version", std::string(version()));
  doc.set("command", command_);
  for (const auto& [k, v] : params_) {
    doc.set("param." + k, v);
  }
  for (const auto& [k, v] : seeds_) {
    doc.set("seed." + k, v);
  }
  doc.set("inputs", static_cast<std::uint64_t>(inputs_.size()));
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    doc.set("input." + std::to_string(i) + ".path", inputs_[i].path);
    doc.set("input." + std::to_string(i) + ".sha256", inputs_[i].sha256);
  }
  doc.set("outputs", static_cast<std::uint64_t>(outputs_.size()));
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    doc.set("output." + std::to_string(i) + ".path", outputs_[i].path);
    doc.set("output." + std::to_string(i) + ".sha256", outputs_[i].sha256);
  }
  return doc;
}

ArtifactWriter::ArtifactWriter(fs::path dir, RunManifest& manifest)
    : dir_(std::move(dir)), manifest_(manifest) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw ConfigError("output directory " + dir_.string() + " is not writable");
  }
}

fs::path ArtifactWriter::write(const std::string& file_name, std::string_view content) {
  const fs::path p = dir_ / file_name;
  atomic_write(p, content);
  manifest_.add_output(file_name, sha256_hex(content));
  return p;
}

fs::path ArtifactWriter::finish() {
  const fs::path p = dir_ / manifest_.file_name();
  atomic_write(p, manifest_.to_keyed().to_string());
  return p;
}

std::vector<std::string> verify_manifest(const fs::path& manifest_path) {
  const KeyedText doc = KeyedText::read_file(manifest_path);
  const fs::path dir = manifest_path.parent_path();
  std::vector<std::string> bad;
  const std::uint64_t n = doc.get_uint("outputs", 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::string name = doc.get_string("output." + std::to_string(i) + ".path");
    const std::string want = doc.get_string("output." + std::to_string(i) + ".sha256");
    const fs::path p = dir / name;
    if (!fs::exists(p) || sha256_file(p) != want) {
      bad.push_back(name);
    }
  }
  return bad;
}

}  // namespace irops::cli
