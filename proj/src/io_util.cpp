// =============================================================================
// io_util.cpp
// =============================================================================
#include "wfsp/io_util.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace wfsp {

std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const nlohmann::json& config) {
    std::ostringstream os;
    os << std::hex << fnv1a64(config.dump());
    return os.str();
}

nlohmann::json ResultRecord::to_json() const {
    return nlohmann::json{{"config", config},
                          {"config_hash", config_hash(config)},
                          {"seed", seed},
                          {"output", output}};
}

CsvWriter::CsvWriter(std::ostream& os, const nlohmann::json& config, std::uint64_t seed,
                     const std::vector<std::string>& columns)
    : os_(os), width_(columns.size()) {
    os_ << "# config_hash=" << config_hash(config) << " seed=" << seed << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) {
        os_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    }
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::invalid_argument("CsvWriter: column count mismatch");
    os_.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        os_ << values[i] << (i + 1 < values.size() ? "," : "");
    }
    os_ << '\n';
}

void CsvWriter::row_raw(const std::string& line) { os_ << line << '\n'; }

struct OutputTarget::Impl {
    std::ofstream file;
    bool use_stdout = true;
};

OutputTarget::OutputTarget(const std::string& path) : impl_(new Impl) {
    if (!path.empty() && path != "-") {
        impl_->file.open(path);
        if (!impl_->file) {
            delete impl_;
            throw std::runtime_error("cannot open output file: " + path);
        }
        impl_->use_stdout = false;
    }
}

OutputTarget::~OutputTarget() { delete impl_; }

std::ostream& OutputTarget::stream() {
    return impl_->use_stdout ? std::cout : impl_->file;
}

}  // namespace wfsp
