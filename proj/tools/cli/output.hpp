#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace quench::cli {

/// %.17g (round-trip exact for doubles), always '.' as decimal point.
std::string fmt17(double v);

/// Accumulates a CSV in memory; the run writes all files at the end so the
/// manifest hash inventory is taken from the exact bytes emitted.
class CsvBuilder {
  public:
    explicit CsvBuilder(std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    void add_row_raw(const std::vector<std::string>& cells);
    const std::string& bytes() const { return data_; }

  private:
    std::size_t n_cols_;
    std::string data_;
};

struct OutputFile {
    std::string name;
    std::string bytes;
};

struct TaskStatus {
    std::string id;
    std::string status;  // "ok" or "failed: ..."
};

/// Write every file plus manifest.json into out_dir. The manifest carries
/// the resolved config, conventions, per-task status, and a SHA-256
/// inventory of the emitted files; it is written atomically (tmp + rename).
/// Wall-clock timestamps are recorded only when QUENCH_MANIFEST_TIMES=1, so
/// repeated runs are byte-identical by default.
void write_outputs(const std::string& out_dir, const std::string& command,
                   const nlohmann::json& config, long seed,
                   const std::vector<OutputFile>& files,
                   const std::vector<TaskStatus>& tasks);

}  // namespace quench::cli
