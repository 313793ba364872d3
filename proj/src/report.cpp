#include "gateimpact/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace gateimpact {

using nlohmann::json;

CircuitSummary summarize(const Circuit& circuit) {
    CircuitSummary s;
    s.num_qubits = circuit.num_qubits;
    s.num_ops = circuit.ops.size();
    std::set<Qubit> active;
    for (const auto& op : circuit.ops) {
        ++s.gate_counts[std::string(to_string(op.kind))];
        if (is_gate(op.kind)) active.insert(op.qubits.begin(), op.qubits.end());
    }
    s.active_qubits = static_cast<int>(active.size());
    s.depth = compute_layers(circuit).num_layers;
    return s;
}

ImpactReport build_report(const ReversalSuite& suite, const SuiteResult& results, const LayerSchedule& schedule,
                          std::uint64_t shots, const std::optional<Distribution>& ideal) {
    if (schedule.layer_of.size() != suite.original.ops.size()) {
        throw ReportError("schedule does not belong to the suite's circuit");
    }
    ImpactReport report;
    report.summary = summarize(suite.original);
    report.amplification = suite.amplification;
    report.shots = shots;

    std::map<std::size_t, const Distribution*> by_gate;
    for (const auto& v : results.variants) by_gate[v.gate_index] = &v.distribution;

    for (const auto& variant : suite.variants) {
        auto it = by_gate.find(variant.gate_index);
        if (it == by_gate.end()) {
            throw ReportError("missing result for variant at gate " + std::to_string(variant.gate_index));
        }
        const GateOp& op = suite.original.ops[variant.gate_index];
        ImpactRecord rec;
        rec.gate_index = variant.gate_index;
        rec.kind = op.kind;
        rec.adjoint = op.adjoint;
        rec.qubits = op.qubits;
        rec.layer = schedule.layer_of[variant.gate_index];
        rec.tvd = tvd(results.original, *it->second);
        if (ideal) rec.tvd_ideal = tvd(*ideal, *it->second);
        report.records.push_back(std::move(rec));
    }
    std::stable_sort(report.records.begin(), report.records.end(), [](const ImpactRecord& a, const ImpactRecord& b) {
        if (a.tvd != b.tvd) return a.tvd > b.tvd;
        return a.gate_index < b.gate_index;
    });

    Analyses& an = report.analyses;
    try {
        an.positional = positional_correlation(report);
    } catch (const std::invalid_argument& e) {
        an.positional_note = e.what();
    }
    if (!report.records.empty()) an.coverage = qubit_coverage(report, kDefaultCoverageThresholds);
    try {
        an.one_vs_two = one_vs_two_qubit(report);
    } catch (const std::invalid_argument& e) {
        an.one_vs_two_note = e.what();
    }
    if (ideal) {
        std::vector<double> vs_ideal, vs_orig;
        for (const auto& r : report.records) {
            vs_ideal.push_back(*r.tvd_ideal);
            vs_orig.push_back(r.tvd);
        }
        try {
            an.validation = pearson(vs_ideal, vs_orig);
        } catch (const std::invalid_argument& e) {
            an.validation_note = e.what();
        }
    } else {
        an.validation_note = "ideal output not available";
    }
    return report;
}

Correlation positional_correlation(const ImpactReport& report) {
    if (report.records.size() < 3) throw ReportError("positional correlation needs at least 3 records");
    std::vector<double> layers, tvds;
    for (const auto& r : report.records) {
        layers.push_back(r.layer);
        tvds.push_back(r.tvd);
    }
    return pearson(layers, tvds);
}

std::vector<CoverageRow> qubit_coverage(const ImpactReport& report, const std::vector<double>& thresholds) {
    if (report.records.empty()) throw ReportError("qubit coverage of an empty report");
    int active = report.summary.active_qubits;
    if (active <= 0) {
        std::set<Qubit> qs;
        for (const auto& r : report.records) qs.insert(r.qubits.begin(), r.qubits.end());
        active = static_cast<int>(qs.size());
    }
    const double n = static_cast<double>(report.records.size());
    std::vector<CoverageRow> rows;
    for (double t : thresholds) {
        if (!(t > 0.0 && t <= 1.0)) throw ReportError("coverage thresholds must lie in (0, 1]");
        // absorb rounding like 0.1 * 30 = 3.0000000000000004
        const auto take = static_cast<std::size_t>(std::max(1.0, std::ceil(t * n - 1e-9)));
        std::set<Qubit> touched;
        for (std::size_t i = 0; i < take && i < report.records.size(); ++i) {
            touched.insert(report.records[i].qubits.begin(), report.records[i].qubits.end());
        }
        rows.push_back({t, static_cast<int>(take), static_cast<int>(touched.size()),
                        static_cast<double>(touched.size()) / active});
    }
    return rows;
}

OneVsTwo one_vs_two_qubit(const ImpactReport& report) {
    double min_cx = 2.0;
    bool have_cx = false;
    for (const auto& r : report.records) {
        if (r.kind == GateKind::CX) {
            have_cx = true;
            min_cx = std::min(min_cx, r.tvd);
        }
    }
    OneVsTwo out;
    for (const auto& r : report.records) {
        if (r.kind != GateKind::SX && r.kind != GateKind::X) continue;
        ++out.total;
        if (r.tvd > min_cx) ++out.count;
    }
    if (!have_cx) throw ReportError("no CX records to compare against");
    if (out.total == 0) throw ReportError("no SX/X records");
    out.fraction = static_cast<double>(out.count) / out.total;
    return out;
}

std::vector<InputImpact> input_impact(const std::vector<InputCase>& cases, int r, const NoiseModel& model,
                                      std::uint64_t shots, std::uint64_t seed) {
    std::vector<InputImpact> out;
    for (const auto& c : cases) {
        Circuit reversed = insert_group_reversal(c.circuit, c.gates, r);
        auto sorted = c.gates;
        std::sort(sorted.begin(), sorted.end());
        std::uint64_t key = 0;
        for (std::size_t g : sorted) key = mix64(key ^ g);
        const Distribution base = run_noisy(c.circuit, model, shots, seed);
        const Distribution rev = run_noisy(reversed, model, shots, derive_seed(seed, key));
        out.push_back({c.label, tvd(base, rev)});
    }
    std::stable_sort(out.begin(), out.end(), [](const InputImpact& a, const InputImpact& b) { return a.tvd > b.tvd; });
    return out;
}

namespace {

json correlation_json(const std::optional<Correlation>& c, const std::string& note) {
    if (c) return json{{"r", c->r}, {"p", c->p}};
    return json{{"r", nullptr}, {"p", nullptr}, {"note", note}};
}

std::string qubit_list(const std::vector<Qubit>& qs) {
    std::string s;
    for (std::size_t i = 0; i < qs.size(); ++i) s += (i ? " " : "") + std::to_string(qs[i]);
    return s;
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string kind_label(const ImpactRecord& r) {
    std::string k(to_string(r.kind));
    return r.adjoint ? k + "dg" : k;
}

}  // namespace

json report_to_json(const ImpactReport& report) {
    json records = json::array();
    for (const auto& r : report.records) {
        json rec{{"gate_index", r.gate_index}, {"kind", kind_label(r)}, {"qubits", r.qubits},
                 {"layer", r.layer}, {"tvd", r.tvd}};
        if (r.tvd_ideal) rec["tvd_ideal"] = *r.tvd_ideal;
        records.push_back(std::move(rec));
    }
    json coverage = json::array();
    for (const auto& row : report.analyses.coverage) {
        coverage.push_back({{"threshold", row.threshold}, {"records", row.records}, {"qubits", row.qubits},
                            {"fraction", row.fraction}});
    }
    json one_vs_two = report.analyses.one_vs_two
                          ? json{{"count", report.analyses.one_vs_two->count},
                                 {"total", report.analyses.one_vs_two->total},
                                 {"fraction", report.analyses.one_vs_two->fraction}}
                          : json{{"count", nullptr}, {"note", report.analyses.one_vs_two_note}};
    const auto& s = report.summary;
    return json{
        {"circuit",
         {{"num_qubits", s.num_qubits}, {"num_ops", s.num_ops}, {"gate_counts", s.gate_counts},
          {"depth", s.depth}, {"active_qubits", s.active_qubits}}},
        {"amplification", report.amplification},
        {"shots", report.shots},
        {"records", records},
        {"analyses",
         {{"positional_correlation", correlation_json(report.analyses.positional, report.analyses.positional_note)},
          {"qubit_coverage", coverage},
          {"one_vs_two_qubit", one_vs_two},
          {"validation_correlation", correlation_json(report.analyses.validation, report.analyses.validation_note)}}},
    };
}

std::string report_to_csv(const ImpactReport& report) {
    std::ostringstream out;
    out << "gate_index,kind,qubits,layer,tvd\n";
    for (const auto& r : report.records) {
        out << r.gate_index << ',' << kind_label(r) << ',' << qubit_list(r.qubits) << ',' << r.layer << ','
            << fmt_real(r.tvd) << '\n';
    }
    return out.str();
}

std::string qubit_track_csv(const ImpactReport& report, Qubit qubit) {
    std::vector<const ImpactRecord*> rows;
    for (const auto& r : report.records) {
        if (std::find(r.qubits.begin(), r.qubits.end(), qubit) != r.qubits.end()) rows.push_back(&r);
    }
    std::sort(rows.begin(), rows.end(), [](const ImpactRecord* a, const ImpactRecord* b) {
        return a->layer != b->layer ? a->layer < b->layer : a->gate_index < b->gate_index;
    });
    std::ostringstream out;
    out << "layer,gate_index,kind,tvd\n";
    for (const auto* r : rows) out << r->layer << ',' << r->gate_index << ',' << kind_label(*r) << ',' << fmt_real(r->tvd) << '\n';
    return out.str();
}

}  // namespace gateimpact
