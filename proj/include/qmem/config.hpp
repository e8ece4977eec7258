#pragma once

// Plain-text configuration: one `key=value` per line, `#` starts a comment.
// Keys use the long flag names of the CLI (e.g. `p-range`, `tol`).

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

namespace qmem {

class Config {
 public:
  Config() = default;

  /// Throws InvalidArgument on a line without '=' or with an empty key, and on
  /// duplicate keys.
  static Config parse(std::istream& is);
  /// Throws IoError when the file cannot be read.
  static Config load(const std::filesystem::path& path);

  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace qmem
