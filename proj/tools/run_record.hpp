#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace pairwire::cli {

inline constexpr std::string_view kRecordSchema = "pairwire.run-record/1";

std::string_view tool_version();

/// "%.17g" rendering used for every CSV number.
std::string format_number(double x);

/// Stable 64-bit FNV-1a digest of the command, its fully resolved
/// parameters, the record schema and the tool version, as 16 hex digits.
std::string params_digest(std::string_view command, const nlohmann::json& params);

/// Structured result of one invocation. Serialization is deterministic:
/// object keys are sorted and no wall-clock data is included.
struct RunRecord {
  std::string command;
  nlohmann::json params;
  nlohmann::json outputs;

  std::string digest() const { return params_digest(command, params); }
  nlohmann::json to_json() const;
  std::string to_text() const;  // pretty JSON plus trailing newline
};

/// One directory per params digest holding the rendered output and a
/// metadata file with timestamps. Writes go to a temporary file that is
/// renamed into place.
class ResultCache {
public:
  explicit ResultCache(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const noexcept { return root_; }
  std::optional<std::string> load(const std::string& digest, std::string_view extension) const;
  /// Throws IoError on any filesystem failure.
  void store(const std::string& digest, std::string_view extension, const std::string& bytes,
             std::string_view command) const;

private:
  std::filesystem::path root_;
};

}  // namespace pairwire::cli
