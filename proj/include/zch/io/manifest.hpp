#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace zch::io {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64-bit digest, hex encoded.
inline std::string fnv1a_hex(const char* data, std::size_t len) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot digest missing file " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return fnv1a_hex(bytes.data(), bytes.size());
}

// Reproducibility record written next to every command's outputs.
class RunManifest {
 public:
  RunManifest(std::string subcommand, nlohmann::json config)
      : subcommand_(std::move(subcommand)), config_(std::move(config)),
        start_(std::chrono::steady_clock::now()) {}

  void add_output(const std::string& path) {
    outputs_.push_back({path, file_digest(path)});
  }

  void write(const std::string& path) const {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["subcommand"] = subcommand_;
    j["config"] = config_;
    j["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start_)
            .count();
    j["outputs"] = nlohmann::json::object();
    for (const auto& [file, digest] : outputs_) j["outputs"][file] = digest;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest " + path);
    out << j.dump(2) << "\n";
  }

 private:
  std::string subcommand_;
  nlohmann::json config_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

}  // namespace zch::io
