#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace gateimpact::cli {

/// Stable process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 2, kExecution = 3 };

struct RunConfig {
    std::string input;
    int reversals = 5;
    std::uint64_t shots = 32000;
    std::uint64_t seed = 0;
    bool include_rz = false;
    std::string noise = "default";  // "default", "ideal" or a JSON path
    std::string out_dir = ".";
    bool extended_gates = false;
};

nlohmann::json config_to_json(const RunConfig& config);

/// analyze: writes report.json, report.csv and tracks/qubit_<q>.csv.
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);

struct TransformRequest {
    std::vector<std::size_t> gates;  // empty with no group = every eligible gate
    std::vector<std::size_t> group;
};

/// transform: writes variant_<gate>.qasm per gate, or group_<i>_<j>....qasm.
int cmd_transform(const RunConfig& config, const TransformRequest& request, std::ostream& out, std::ostream& err);

struct MitigateRequest {
    int k = 1;
    int seed_batch = 10;
    std::optional<std::string> report_path;  // reuse an existing report.json
};

/// mitigate: writes mitigated.qasm and mitigation.json.
int cmd_mitigate(const RunConfig& config, const MitigateRequest& request, std::ostream& out, std::ostream& err);

struct BenchRequest {
    std::string family;  // qft | ghz | tfim | crosstalk
    int n = 0;
    std::string target;
    int steps = 1;
    double theta_zz = 0.5;
    double theta_x = 0.3;
};

/// bench: writes <out_dir>/<family>_<n>.qasm.
int cmd_bench(const RunConfig& config, const BenchRequest& request, std::ostream& out, std::ostream& err);

/// simulate: prints (or writes distribution.json) the outcome distribution.
int cmd_simulate(const RunConfig& config, bool exact, bool to_file, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gateimpact::cli
