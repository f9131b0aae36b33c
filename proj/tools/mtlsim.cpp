// mtlsim: command-line front end
// parse -> synth -> route -> simulate -> report workflows over .bench
// netlists. Exit codes: 0 success, 1 verification failure, 2 usage or
// config error, 3 I/O error.

#include "mtl/crossbar.hpp"
#include "mtl/device.hpp"
#include "mtl/energy.hpp"
#include "mtl/netlist.hpp"
#include "mtl/sim.hpp"
#include "mtl/synth.hpp"
#include "mtl/tlg.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

mtl::DeviceParams params_from(const std::string& config_path) {
    if (config_path.empty()) return mtl::DeviceParams{};
    return mtl::load_device_config(config_path);
}

std::vector<std::vector<std::uint8_t>> load_stream(const std::string& path,
                                                   std::size_t width) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::vector<std::uint8_t>> vectors;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        std::string bits;
        for (char c : line) {
            if (c == '0' || c == '1') bits.push_back(c);
            else if (!std::isspace(static_cast<unsigned char>(c)))
                throw std::invalid_argument("stream line " + std::to_string(lineno) +
                                            ": expected only 0/1");
        }
        if (bits.empty()) continue;
        if (bits.size() != width)
            throw std::invalid_argument("stream line " + std::to_string(lineno) + ": got " +
                                        std::to_string(bits.size()) + " bits, expected " +
                                        std::to_string(width));
        std::vector<std::uint8_t> v(width);
        for (std::size_t i = 0; i < width; ++i) v[i] = bits[i] == '1';
        vectors.push_back(std::move(v));
    }
    if (vectors.empty()) throw std::invalid_argument("stream file has no vectors");
    return vectors;
}

std::string bits_to_string(const std::vector<std::uint8_t>& v) {
    std::string s(v.size(), '0');
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i] ? '1' : '0';
    return s;
}

int cmd_synth(const std::string& bench, unsigned fanin, const std::string& out) {
    const mtl::Netlist nl = mtl::load_bench_file(bench);
    const mtl::TlgNetwork net = mtl::synthesize(nl, fanin);
    const mtl::SynthStats st = mtl::synth_stats(net);

    json j;
    j["benchmark"] = nl.name;
    j["fanin_bound"] = fanin;
    j["mappable"] = net.mappable;
    j["logic_gates"] = st.logic_gates;
    j["buffer_gates"] = st.buffer_gates;
    j["stages"] = st.stage_count;
    std::cerr << j.dump(2) << "\n";
    write_output(out, mtl::tlg_to_json(net));
    return 0;
}

int cmd_verify(const std::string& bench, const std::string& network_path, bool exhaustive,
               std::size_t vectors, std::uint64_t seed, const std::string& config,
               const std::string& out) {
    const mtl::DeviceParams params = params_from(config);
    const mtl::Netlist nl = mtl::load_bench_file(bench);
    const mtl::TlgNetwork net = mtl::tlg_load(network_path);

    const mtl::EquivalenceReport rep =
        exhaustive ? mtl::equivalence_exhaustive(nl, net, params)
                   : mtl::equivalence_random(nl, net, params, vectors, seed);

    json j;
    j["benchmark"] = nl.name;
    j["mode"] = exhaustive ? "exhaustive" : "random";
    j["vectors_tested"] = rep.vectors_tested;
    j["mismatches"] = rep.mismatches;
    j["mismatched_vectors"] = rep.mismatched_vectors;
    j["under_threshold_events"] = rep.sim_state.under_threshold_count;
    write_output(out, j.dump(2) + "\n");
    return rep.ok() ? 0 : 1;
}

int cmd_sim(const std::string& bench, const std::string& network_path,
            const std::string& stream_path, const std::string& config,
            const std::string& out) {
    const mtl::DeviceParams params = params_from(config);
    const mtl::Netlist nl = mtl::load_bench_file(bench);
    const mtl::TlgNetwork net =
        network_path.empty() ? mtl::synthesize(nl, 2) : mtl::tlg_load(network_path);
    const auto stream = load_stream(stream_path, net.inputs.size());

    const mtl::SimResult res = mtl::simulate(net, stream, params);
    json j;
    j["benchmark"] = nl.name;
    j["stages"] = net.stage_count();
    j["vectors"] = stream.size();
    j["cycles"] = res.state.cycle;
    j["under_threshold_events"] = res.state.under_threshold_count;
    json outs = json::array();
    for (const auto& v : res.outputs) outs.push_back(bits_to_string(v));
    j["outputs"] = outs;
    write_output(out, j.dump(2) + "\n");
    return 0;
}

int cmd_report(const std::string& bench, const std::string& config,
               const std::string& baseline_path, std::size_t vectors, std::uint64_t seed,
               bool mc, std::size_t trials, double sigma, unsigned jobs,
               const std::string& out, const std::string& routing_out) {
    const mtl::DeviceParams params = params_from(config);
    const mtl::Netlist nl = mtl::load_bench_file(bench);
    const mtl::TlgNetwork net = mtl::synthesize(nl, 2);
    const mtl::Routing routing = mtl::route(net, params);
    if (!routing_out.empty()) write_output(routing_out, mtl::routing_to_json(routing, net));

    const auto sample = nl.inputs.size() <= 12
                            ? mtl::exhaustive_vectors(nl.inputs.size())
                            : mtl::random_vectors(nl.inputs.size(), vectors, seed);
    mtl::EnergyReport rep = mtl::network_report(nl, net, routing, params, sample);

    std::vector<mtl::BaselineEntry> baseline;
    const mtl::BaselineEntry* entry = nullptr;
    if (!baseline_path.empty()) {
        baseline = mtl::load_baseline(baseline_path);
        entry = mtl::find_baseline(baseline, rep.benchmark);
    }

    json j = json::parse(mtl::energy_report_to_json(rep, entry));
    const mtl::ConstraintReport cons = mtl::check_constraints(routing.nets, params);
    j["interconnect_check"] = json{{"nets", cons.nets_checked},
                                   {"violations", cons.violations},
                                   {"worst_resistance_ohm", cons.worst_resistance},
                                   {"resistance_bound_ohm", cons.bound}};
    const mtl::MarginProfile margins = mtl::margin_profile(net, params);
    j["margins"] = json{{"min_abs_current_ua", margins.min_abs_current * 1e6},
                        {"max_input_current_ua", margins.max_input_current * 1e6},
                        {"resolution", margins.resolution()}};

    if (mc) {
        mtl::DeviceParams mc_params = params;
        mc_params.sigma_r = sigma;
        const mtl::MarginReport mr =
            mtl::monte_carlo(nl, net, mc_params, trials, vectors, seed, jobs);
        j["monte_carlo"] = json{{"trials", mr.trials},
                                {"sigma_r", sigma},
                                {"yield", mr.yield},
                                {"failed_trials", mr.failed_trials},
                                {"mismatch_count", mr.mismatch_count},
                                {"under_threshold_events", mr.under_threshold_events},
                                {"min_margin_ratio", mr.min_margin_ratio}};
    }

    std::cout << mtl::energy_report_table(rep, entry);
    if (!out.empty()) write_output(out, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep_fanin(const std::string& bench, const std::string& out) {
    const mtl::Netlist nl = mtl::load_bench_file(bench);
    json rows = json::array();
    std::cout << "fanin  logic  buffers  stages  device-mappable\n";
    for (unsigned k : {2u, 3u, 4u}) {
        const mtl::TlgNetwork net = mtl::synthesize(nl, k);
        const mtl::SynthStats st = mtl::synth_stats(net);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%5u  %5zu  %7zu  %6zu  %s\n", k, st.logic_gates,
                      st.buffer_gates, st.stage_count,
                      net.mappable ? "yes" : "no (logical-only)");
        std::cout << buf;
        rows.push_back(json{{"fanin", k},
                            {"logic_gates", st.logic_gates},
                            {"buffer_gates", st.buffer_gates},
                            {"stages", st.stage_count},
                            {"mappable", net.mappable}});
    }
    json j;
    j["benchmark"] = nl.name;
    j["sweep"] = rows;
    if (!out.empty()) write_output(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mtlsim: magnetic threshold logic synthesis and simulation"};
    app.require_subcommand(1);

    std::string bench, network_path, config, out, stream_path, baseline_path, routing_out;
    unsigned fanin = 2;
    std::uint64_t seed = 0;
    std::size_t vectors = 10000;
    bool exhaustive = false;
    bool mc = false;
    std::size_t trials = 100;
    double sigma = 0.05;
    unsigned jobs = 1;

    CLI::App* synth = app.add_subcommand("synth", "compile a .bench netlist to a TLG network");
    synth->add_option("bench", bench, "input .bench file")->required();
    synth->add_option("--fanin", fanin, "fan-in bound (2 = device-mappable, 3/4 = study)")
        ->check(CLI::IsMember({2, 3, 4}));
    synth->add_option("-o,--output", out, "network JSON output (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "check a network against its netlist");
    verify->add_option("bench", bench, "input .bench file")->required();
    verify->add_option("network", network_path, "network JSON file")->required();
    verify->add_flag("--exhaustive", exhaustive, "iterate all input vectors (<= 24 inputs)");
    verify->add_option("--random", vectors, "number of random vectors (default 10000)");
    verify->add_option("--seed", seed, "random seed (default 0)");
    verify->add_option("--config", config, "device config file");
    verify->add_option("-o,--output", out, "report output (default stdout)");

    CLI::App* sim = app.add_subcommand("sim", "run an input stream through the pipeline");
    sim->add_option("bench", bench, "input .bench file")->required();
    sim->add_option("--network", network_path, "pre-synthesized network JSON");
    sim->add_option("--stream", stream_path, "text file of 0/1 vectors, one per line")
        ->required();
    sim->add_option("--config", config, "device config file");
    sim->add_option("-o,--output", out, "output JSON (default stdout)");

    CLI::App* report = app.add_subcommand("report", "energy/delay report with baseline deltas");
    report->add_option("bench", bench, "input .bench file")->required();
    report->add_option("--config", config, "device config file");
    report->add_option("--baseline", baseline_path, "baseline table JSON");
    report->add_option("--vectors", vectors, "sample vectors for averaging (default 10000)");
    report->add_option("--seed", seed, "random seed (default 0)");
    report->add_flag("--mc", mc, "append a Monte Carlo yield analysis");
    report->add_option("--trials", trials, "Monte Carlo trials (default 100)");
    report->add_option("--sigma", sigma, "relative resistance variation for --mc");
    report->add_option("--jobs", jobs, "worker threads for --mc trials");
    report->add_option("-o,--output", out, "report JSON output");
    report->add_option("--routing", routing_out, "dump the crossbar plan and nets as JSON");

    CLI::App* sweep = app.add_subcommand("sweep-fanin", "gate counts at fan-in bounds 2/3/4");
    sweep->add_option("bench", bench, "input .bench file")->required();
    sweep->add_option("-o,--output", out, "sweep JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(bench, fanin, out);
        if (verify->parsed())
            return cmd_verify(bench, network_path, exhaustive, vectors, seed, config, out);
        if (sim->parsed()) return cmd_sim(bench, network_path, stream_path, config, out);
        if (report->parsed())
            return cmd_report(bench, config, baseline_path, vectors, seed, mc, trials, sigma,
                              jobs, out, routing_out);
        if (sweep->parsed()) return cmd_sweep_fanin(bench, out);
    } catch (const mtl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mtl::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
