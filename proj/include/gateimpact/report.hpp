#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gateimpact/circuit.hpp"
#include "gateimpact/distribution.hpp"
#include "gateimpact/noise_model.hpp"
#include "gateimpact/reversal.hpp"
#include "gateimpact/schedule.hpp"
#include "gateimpact/simulator.hpp"
#include "gateimpact/stats.hpp"

namespace gateimpact {

struct ImpactRecord {
    std::size_t gate_index = 0;
    GateKind kind = GateKind::X;
    bool adjoint = false;
    std::vector<Qubit> qubits;
    int layer = 0;
    double tvd = 0.0;                      // variant vs original
    std::optional<double> tvd_ideal;       // variant vs exact ideal output
};

struct CircuitSummary {
    int num_qubits = 0;
    std::size_t num_ops = 0;
    std::map<std::string, int> gate_counts;
    int depth = 0;
    int active_qubits = 0;  // qubits touched by at least one gate
};

CircuitSummary summarize(const Circuit& circuit);

struct OneVsTwo {
    int count = 0;        // SX/X records above the weakest CX record
    int total = 0;        // SX/X records
    double fraction = 0.0;
};

struct CoverageRow {
    double threshold = 0.0;
    int records = 0;       // ceil(threshold * |records|)
    int qubits = 0;
    double fraction = 0.0;
};

struct Analyses {
    std::optional<Correlation> positional;
    std::string positional_note;
    std::vector<CoverageRow> coverage;
    std::optional<OneVsTwo> one_vs_two;
    std::string one_vs_two_note;
    /// Pearson(tvd vs ideal, tvd vs original) when ideal output was supplied.
    std::optional<Correlation> validation;
    std::string validation_note;
};

struct ImpactReport {
    CircuitSummary summary;
    int amplification = kDefaultReversals;
    std::uint64_t shots = 0;
    std::vector<ImpactRecord> records;  // descending tvd, ties by gate_index
    Analyses analyses;
};

inline const std::vector<double> kDefaultCoverageThresholds{0.05, 0.10, 0.25, 0.50};

class ReportError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One record per suite variant scored against the original's distribution,
/// with all analyses filled in (analyses that do not apply leave a note).
ImpactReport build_report(const ReversalSuite& suite, const SuiteResult& results, const LayerSchedule& schedule,
                          std::uint64_t shots, const std::optional<Distribution>& ideal = std::nullopt);

/// Pearson over (layer, tvd).
Correlation positional_correlation(const ImpactReport& report);

/// For each threshold t, the share of active qubits touched by the top
/// ceil(t * |records|) records.
std::vector<CoverageRow> qubit_coverage(const ImpactReport& report, const std::vector<double>& thresholds);

/// SX/X records whose tvd exceeds the smallest CX tvd.
OneVsTwo one_vs_two_qubit(const ImpactReport& report);

struct InputCase {
    std::string label;
    Circuit circuit;
    std::vector<std::size_t> gates;  // the input-preparation gates to reverse together
};

struct InputImpact {
    std::string label;
    double tvd = 0.0;
};

/// Group-reverses each case's input gates and scores the variant against that
/// case's own original. Ranked by descending tvd, stable on input order.
std::vector<InputImpact> input_impact(const std::vector<InputCase>& cases, int r, const NoiseModel& model,
                                      std::uint64_t shots, std::uint64_t seed);

nlohmann::json report_to_json(const ImpactReport& report);

/// gate_index,kind,qubits,layer,tvd
std::string report_to_csv(const ImpactReport& report);

/// layer,gate_index,kind,tvd rows for records touching `qubit`, in layer order.
std::string qubit_track_csv(const ImpactReport& report, Qubit qubit);

}  // namespace gateimpact
