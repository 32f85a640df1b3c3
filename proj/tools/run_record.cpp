#include "run_record.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include "pairwire/errors.hpp"

#ifndef PAIRWIRE_VERSION
#define PAIRWIRE_VERSION "0.0.0"
#endif

namespace pairwire::cli {

namespace fs = std::filesystem;

std::string_view tool_version() { return PAIRWIRE_VERSION; }

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string params_digest(std::string_view command, const nlohmann::json& params) {
  const nlohmann::json canonical = {{"command", command},
                                    {"params", params},
                                    {"schema", kRecordSchema},
                                    {"tool_version", tool_version()}};
  const std::string text = canonical.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json RunRecord::to_json() const {
  return {{"schema", kRecordSchema}, {"tool_version", tool_version()}, {"command", command},
          {"digest", digest()},      {"params", params},               {"outputs", outputs}};
}

std::string RunRecord::to_text() const { return to_json().dump(2) + "\n"; }

std::optional<std::string> ResultCache::load(const std::string& digest,
                                             std::string_view extension) const {
  const fs::path file = root_ / digest / ("output." + std::string(extension));
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

namespace {

void write_atomically(const fs::path& target, const std::string& bytes) {
  const fs::path tmp = target.parent_path() /
                       (".tmp-" + std::to_string(::getpid()) + "-" + target.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache file " + tmp.string());
    out << bytes;
    out.flush();
    if (!out) throw IoError("short write to cache file " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move cache file into place: " + target.string());
  }
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void ResultCache::store(const std::string& digest, std::string_view extension,
                        const std::string& bytes, std::string_view command) const {
  const fs::path dir = root_ / digest;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir.string() + ": " + ec.message());
  write_atomically(dir / ("output." + std::string(extension)), bytes);
  const nlohmann::json meta = {{"command", command},
                               {"digest", digest},
                               {"created_utc", utc_now()},
                               {"tool_version", tool_version()}};
  write_atomically(dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace pairwire::cli
