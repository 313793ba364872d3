#include "gateimpact/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gateimpact/bench.hpp"
#include "gateimpact/mitigation.hpp"
#include "gateimpact/qasm.hpp"
#include "gateimpact/report.hpp"
#include "gateimpact/reversal.hpp"
#include "gateimpact/simulator.hpp"

namespace gateimpact::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Raised for user-facing failures that should exit with kUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes through a temporary sibling and renames, so readers never see a partial file.
void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

Circuit load_circuit(const std::string& path) {
    const std::string text = read_file(path);
    ParseResult parsed = parse_qasm(text);
    if (!parsed.ok()) {
        std::string msg;
        for (const auto& d : parsed.diagnostics) msg += path + ":" + d.to_string() + "\n";
        if (!msg.empty()) msg.pop_back();
        throw UsageError(msg);
    }
    return std::move(*parsed.circuit);
}

NoiseModel resolve_noise(const RunConfig& config) {
    if (config.noise == "default") return NoiseModel::defaults();
    if (config.noise == "ideal") return NoiseModel::ideal();
    return load_noise_model(config.noise);
}

void check_config(const RunConfig& config) {
    if (config.reversals < 1) throw UsageError("--reversals must be >= 1");
    if (config.shots < 1) throw UsageError("--shots must be >= 1");
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const UsageError& e) {
        err << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "execution failed: " << e.what() << '\n';
        return kExecution;
    }
}

struct Analysis {
    ReversalSuite suite;
    SuiteResult results;
    ImpactReport report;
    std::optional<Distribution> ideal;
};

Analysis analyze_circuit(const Circuit& circuit, const RunConfig& config, const NoiseModel& model) {
    Analysis a;
    a.suite = generate_suite(circuit, config.reversals, config.include_rz);
    a.results = execute_suite(a.suite, model, config.shots, config.seed);
    if (circuit.num_qubits <= kMaxSimQubits) a.ideal = ideal_probabilities(circuit);
    a.report = build_report(a.suite, a.results, compute_layers(circuit), config.shots, a.ideal);
    return a;
}

ImpactReport report_from_json(const json& j) {
    ImpactReport r;
    for (const auto& rec : j.at("records")) {
        ImpactRecord ir;
        ir.gate_index = rec.at("gate_index").get<std::size_t>();
        ir.layer = rec.at("layer").get<int>();
        ir.tvd = rec.at("tvd").get<double>();
        ir.qubits = rec.at("qubits").get<std::vector<Qubit>>();
        r.records.push_back(std::move(ir));
    }
    return r;
}

}  // namespace

json config_to_json(const RunConfig& c) {
    return json{{"input", c.input},       {"reversals", c.reversals}, {"shots", c.shots},
                {"seed", c.seed},         {"include_rz", c.include_rz}, {"noise", c.noise},
                {"out_dir", c.out_dir},   {"extended_gates", c.extended_gates}};
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_config(config);
        const Circuit circuit = load_circuit(config.input);
        const NoiseModel model = resolve_noise(config);
        model.require_valid(circuit.num_qubits);
        const Analysis a = analyze_circuit(circuit, config, model);

        json doc;
        doc["generated_at"] = utc_timestamp();
        doc["config"] = config_to_json(config);
        doc["noise_model"] = model;
        doc["report"] = report_to_json(a.report);
        doc["original_distribution"] = a.results.original;
        json skipped = json::array();
        for (const auto& s : a.suite.skipped) skipped.push_back({{"op_index", s.op_index}, {"reason", to_string(s.reason)}});
        doc["skipped"] = skipped;

        const fs::path dir(config.out_dir);
        write_file_atomic(dir / "report.json", doc.dump(2) + "\n");
        write_file_atomic(dir / "report.csv", report_to_csv(a.report));
        for (Qubit q = 0; q < circuit.num_qubits; ++q) {
            write_file_atomic(dir / "tracks" / ("qubit_" + std::to_string(q) + ".csv"), qubit_track_csv(a.report, q));
        }
        out << "analyzed " << a.report.records.size() << " gates (" << a.suite.skipped.size()
            << " skipped); report in " << (dir / "report.json").string() << '\n';
        return kOk;
    });
}

int cmd_transform(const RunConfig& config, const TransformRequest& request, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_config(config);
        const Circuit circuit = load_circuit(config.input);
        const fs::path dir(config.out_dir);
        const EmitOptions emit{.extended_gates = config.extended_gates};
        const auto eligible = eligible_gate_indices(circuit, config.include_rz);

        std::vector<std::pair<fs::path, std::string>> files;
        if (!request.group.empty()) {
            if (!request.gates.empty()) throw UsageError("--gate and --group are mutually exclusive");
            for (std::size_t g : request.group) {
                if (std::find(eligible.begin(), eligible.end(), g) == eligible.end()) {
                    throw UsageError("op " + std::to_string(g) + " is not an eligible gate");
                }
            }
            auto sorted = request.group;
            std::sort(sorted.begin(), sorted.end());
            std::string name = "group";
            for (std::size_t g : sorted) name += "_" + std::to_string(g);
            files.emplace_back(dir / (name + ".qasm"),
                               emit_qasm(insert_group_reversal(circuit, sorted, config.reversals), emit));
        } else {
            std::vector<std::size_t> targets = request.gates.empty() ? eligible : request.gates;
            for (std::size_t g : targets) {
                if (std::find(eligible.begin(), eligible.end(), g) == eligible.end()) {
                    throw UsageError("op " + std::to_string(g) + " is not an eligible gate");
                }
                files.emplace_back(dir / ("variant_" + std::to_string(g) + ".qasm"),
                                   emit_qasm(insert_reversal(circuit, g, config.reversals), emit));
            }
        }
        for (const auto& [path, text] : files) write_file_atomic(path, text);
        out << "wrote " << files.size() << " variant file(s) to " << dir.string() << '\n';
        return kOk;
    });
}

int cmd_mitigate(const RunConfig& config, const MitigateRequest& request, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_config(config);
        if (request.k < 1) throw UsageError("--k must be >= 1");
        if (request.seed_batch < 1) throw UsageError("--seed-batch must be >= 1");
        const Circuit circuit = load_circuit(config.input);
        const NoiseModel model = resolve_noise(config);
        model.require_valid(circuit.num_qubits);

        const ImpactReport report = request.report_path
                                        ? report_from_json(json::parse(read_file(*request.report_path)).at("report"))
                                        : analyze_circuit(circuit, config, model).report;
        const auto layers = select_target_layers(report, request.k);
        auto [mitigated, plan] = serialize_layers(circuit, layers);
        const Distribution reference = ideal_probabilities(circuit);

        json per_seed = json::array();
        double before = 0.0, after = 0.0;
        for (int i = 0; i < request.seed_batch; ++i) {
            const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
            const auto o = evaluate_mitigation(circuit, mitigated, model, config.shots, seed, reference);
            per_seed.push_back({{"seed", seed}, {"tvd_before", o.tvd_before}, {"tvd_after", o.tvd_after}});
            before += o.tvd_before;
            after += o.tvd_after;
        }
        before /= request.seed_batch;
        after /= request.seed_batch;

        json summary{{"config", config_to_json(config)},
                     {"k", request.k},
                     {"seed_batch", request.seed_batch},
                     {"plan", plan_to_json(plan)},
                     {"tvd_before", before},
                     {"tvd_after", after},
                     {"per_seed", per_seed}};
        const fs::path dir(config.out_dir);
        write_file_atomic(dir / "mitigated.qasm", emit_qasm(mitigated, {.extended_gates = config.extended_gates}));
        write_file_atomic(dir / "mitigation.json", summary.dump(2) + "\n");
        out << "serialized " << plan.target_layers.size() << " layer(s); mean tvd " << before << " -> " << after << '\n';
        return kOk;
    });
}

int cmd_bench(const RunConfig& config, const BenchRequest& request, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Circuit c;
        if (request.family == "qft") {
            const std::string target = request.target.empty() ? std::string(static_cast<std::size_t>(std::max(request.n, 0)), '0')
                                                              : request.target;
            c = qft_circuit(request.n, target);
        } else if (request.family == "ghz") {
            c = ghz_circuit(request.n);
        } else if (request.family == "tfim") {
            c = tfim_circuit(request.n, request.steps, request.theta_zz, request.theta_x);
        } else if (request.family == "crosstalk") {
            c = crosstalk_circuit();
        } else {
            throw UsageError("unknown benchmark family '" + request.family + "'");
        }
        const fs::path path = fs::path(config.out_dir) / (request.family + "_" + std::to_string(c.num_qubits) + ".qasm");
        write_file_atomic(path, emit_qasm(c, {.extended_gates = config.extended_gates}));
        out << path.string() << '\n';
        return kOk;
    });
}

int cmd_simulate(const RunConfig& config, bool exact, bool to_file, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        check_config(config);
        const Circuit circuit = load_circuit(config.input);
        Distribution d;
        if (exact) {
            d = ideal_probabilities(circuit);
        } else {
            const NoiseModel model = resolve_noise(config);
            d = run_noisy(circuit, model, config.shots, config.seed);
        }
        const std::string text = json(d).dump(2) + "\n";
        if (to_file) write_file_atomic(fs::path(config.out_dir) / "distribution.json", text);
        else out << text;
        return kOk;
    });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ranks the gates of a quantum circuit by their impact on output error."};
    app.require_subcommand(1);

    RunConfig config;
    auto add_common = [&](CLI::App* sub, bool execution) {
        sub->add_option("input", config.input, "input .qasm file")->required();
        sub->add_option("--out", config.out_dir, "output directory");
        if (execution) {
            sub->add_option("--reversals", config.reversals, "reversed pairs per gate")->capture_default_str();
            sub->add_option("--shots", config.shots, "trajectories per circuit")->capture_default_str();
            sub->add_option("--seed", config.seed, "base random seed")->capture_default_str();
            sub->add_flag("--include-rz", config.include_rz, "also reverse RZ gates");
            sub->add_option("--noise", config.noise, "noise JSON path, 'ideal' or 'default'")->capture_default_str();
        }
        sub->add_flag("--extended-gates", config.extended_gates, "emit SX-adjoint as sxdg");
    };

    auto* analyze = app.add_subcommand("analyze", "score every gate by reversed-pair TVD");
    add_common(analyze, true);

    TransformRequest transform_req;
    auto* transform = app.add_subcommand("transform", "emit reversed-pair variant circuits");
    add_common(transform, true);
    transform->add_option("--gate", transform_req.gates, "op index to reverse (repeatable)");
    transform->add_option("--group", transform_req.group, "op indices to reverse together")->delimiter(',');

    MitigateRequest mitigate_req;
    std::string report_path;
    auto* mitigate = app.add_subcommand("mitigate", "serialize the layers of the top-k gates");
    add_common(mitigate, true);
    mitigate->add_option("--k", mitigate_req.k, "number of top gates whose layers are serialized")->capture_default_str();
    mitigate->add_option("--seed-batch", mitigate_req.seed_batch, "seeds averaged in the before/after summary")
        ->capture_default_str();
    mitigate->add_option("--report", report_path, "reuse an existing report.json");

    BenchRequest bench_req;
    auto* bench = app.add_subcommand("bench", "write a benchmark circuit");
    bench->add_option("family", bench_req.family, "qft | ghz | tfim | crosstalk")->required();
    bench->add_option("n", bench_req.n, "qubit count");
    bench->add_option("--target", bench_req.target, "QFT output bitstring");
    bench->add_option("--steps", bench_req.steps, "TFIM trotter steps")->capture_default_str();
    bench->add_option("--theta-zz", bench_req.theta_zz, "TFIM ZZ angle")->capture_default_str();
    bench->add_option("--theta-x", bench_req.theta_x, "TFIM field angle")->capture_default_str();
    bench->add_option("--out", config.out_dir, "output directory");
    bench->add_flag("--extended-gates", config.extended_gates, "emit SX-adjoint as sxdg");

    bool exact = false;
    bool sim_to_file = false;
    auto* simulate = app.add_subcommand("simulate", "print the outcome distribution of a circuit");
    add_common(simulate, true);
    simulate->add_flag("--exact", exact, "exact noiseless probabilities");
    simulate->add_flag("--write", sim_to_file, "write distribution.json into --out instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        const auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        if (dynamic_cast<const CLI::CallForHelp*>(&e) == nullptr && e.get_exit_code() == 0) {
            out << failing->help();
            return kOk;
        }
        err << e.what() << '\n';
        return kUsage;
    }

    if (analyze->parsed()) return cmd_analyze(config, out, err);
    if (transform->parsed()) return cmd_transform(config, transform_req, out, err);
    if (mitigate->parsed()) {
        if (!report_path.empty()) mitigate_req.report_path = report_path;
        return cmd_mitigate(config, mitigate_req, out, err);
    }
    if (bench->parsed()) return cmd_bench(config, bench_req, out, err);
    if (simulate->parsed()) return cmd_simulate(config, exact, sim_to_file, out, err);
    return kUsage;
}

}  // namespace gateimpact::cli
