#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "irops/core/keyed_text.hpp"

namespace irops::cli {

std::string_view version() noexcept;

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// Record of one run: parameters, seeds, hashed inputs and outputs. Carries no
/// timestamps or absolute output paths so identical runs produce identical files.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_param(const std::string& key, const std::string& value);
  void set_seed(const std::string& label, std::uint64_t seed);
  void add_input(const std::filesystem::path& path);
  void add_output(const std::string& file_name, const std::string& sha256);

  [[nodiscard]] const std::string& command() const noexcept { return command_; }
  [[nodiscard]] KeyedText to_keyed() const;
  /// File name used inside the output directory.
  [[nodiscard]] std::string file_name() const;

 private:
  struct FileEntry {
    std::string path;
    std::string sha256;
  };
  std::string command_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<std::pair<std::string, std::uint64_t>> seeds_;
  std::vector<FileEntry> inputs_;
  std::vector<FileEntry> outputs_;
};

/// Writes artifacts atomically into one directory and records their hashes.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, RunManifest& manifest);

  std::filesystem::path write(const std::string& file_name, std::string_view content);
  /// Writes the manifest itself; returns its path.
  std::filesystem::path finish();

  [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }
  [[nodiscard]] RunManifest& manifest() noexcept { return manifest_; }

 private:
  std::filesystem::path dir_;
  RunManifest& manifest_;
};

/// Re-hashes every output listed in a manifest file; returns the names whose
/// file is missing or whose hash differs.
std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path);

}  // namespace irops::cli
