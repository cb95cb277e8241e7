// =============================================================================
// io_util.hpp — Result records, config hashing, CSV/JSON output.
//
// Every artifact written by the CLI embeds the hash of its canonical config
// serialization and the seed, so results can be traced back to the exact
// invocation.  JSON objects serialize with sorted keys (nlohmann default),
// which makes the hash stable.
// =============================================================================
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wfsp {

[[nodiscard]] std::uint64_t fnv1a64(std::string_view s) noexcept;

// Canonical hash of a JSON config (dump of the sorted-key serialization).
[[nodiscard]] std::string config_hash(const nlohmann::json& config);

struct ResultRecord {
    nlohmann::json config;
    std::uint64_t seed = 0;
    nlohmann::json output;

    [[nodiscard]] nlohmann::json to_json() const;
};

// CSV with a leading comment line carrying config hash and seed.
class CsvWriter {
  public:
    CsvWriter(std::ostream& os, const nlohmann::json& config, std::uint64_t seed,
              const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row_raw(const std::string& line);

  private:
    std::ostream& os_;
    std::size_t width_;
};

// Opens `path` for writing or returns std::cout for "-" / empty.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path);
    ~OutputTarget();
    OutputTarget(const OutputTarget&) = delete;
    OutputTarget& operator=(const OutputTarget&) = delete;
    [[nodiscard]] std::ostream& stream();

  private:
    struct Impl;
    Impl* impl_;
};

}  // namespace wfsp
