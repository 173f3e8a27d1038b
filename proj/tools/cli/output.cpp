#include "output.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sha256.hpp"

namespace quench::cli {

namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvBuilder::CsvBuilder(std::vector<std::string> columns)
    : n_cols_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) data_ += ',';
        data_ += columns[i];
    }
    data_ += '\n';
}

void CsvBuilder::add_row(const std::vector<double>& values) {
    if (values.size() != n_cols_) {
        throw std::logic_error("CsvBuilder: column count mismatch");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) data_ += ',';
        data_ += fmt17(values[i]);
    }
    data_ += '\n';
}

void CsvBuilder::add_row_raw(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_) {
        throw std::logic_error("CsvBuilder: column count mismatch");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) data_ += ',';
        data_ += cells[i];
    }
    data_ += '\n';
}

namespace {

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("short write to " + path.string());
    }
}

}  // namespace

void write_outputs(const std::string& out_dir, const std::string& command,
                   const nlohmann::json& config, long seed,
                   const std::vector<OutputFile>& files,
                   const std::vector<TaskStatus>& tasks) {
    fs::create_directories(out_dir);

    nlohmann::json manifest;
    manifest["tool"] = "quench";
    manifest["version"] = "0.1.0";
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["seed"] = seed;
    manifest["conventions"] = {
        {"csv_float_format", "%.17g"},
        {"log_ratio", "natural logarithm"},
        {"dissipation_kernels",
         "kappa_L(w) = kappa*wc^2/(w^2+wc^2), kappa_E(w) = kappa*exp(-|w|/wc); "
         "at wc = w these evaluate to kappa/2 and kappa/e"},
    };
    manifest["tasks"] = nlohmann::json::array();
    for (const auto& t : tasks) {
        manifest["tasks"].push_back({{"id", t.id}, {"status", t.status}});
    }
    manifest["files"] = nlohmann::json::array();
    for (const auto& f : files) {
        write_file(fs::path(out_dir) / f.name, f.bytes);
        manifest["files"].push_back({{"path", f.name},
                                     {"bytes", f.bytes.size()},
                                     {"sha256", sha256_hex(f.bytes)}});
    }
    const char* times = std::getenv("QUENCH_MANIFEST_TIMES");
    if (times && std::string(times) == "1") {
        manifest["finished"] = iso_now();
    }

    const fs::path tmp = fs::path(out_dir) / "manifest.json.tmp";
    const fs::path dst = fs::path(out_dir) / "manifest.json";
    write_file(tmp, manifest.dump(2) + "\n");
    fs::rename(tmp, dst);
}

}  // namespace quench::cli
