// b5groam - CLI for the roaming settlement simulator
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "b5groam/bench.hpp"
#include "b5groam/scenario.hpp"

using namespace b5g;

namespace {

constexpr int EXIT_SCENARIO_INVALID = 2;
constexpr int EXIT_SECURITY_VIOLATION = 3;

std::vector<uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<uint64_t> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stoull(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

CircuitConfig load_circuit_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw B5gError(Errc::IOFailure, "cannot open circuit descriptor " + path);
    nlohmann::json j;
    in >> j;
    CircuitConfig cfg;
    const auto& rates = j.at("rates");
    cfg.rates = {rates.at("r_sms").get<uint64_t>(), rates.at("r_mb").get<uint64_t>(),
                 rates.at("r_voice").get<uint64_t>()};
    cfg.salted = j.value("salted", false);
    cfg.range_bits = j.value("range_bits", 32u);
    return cfg;
}

int cmd_keys_setup(uint32_t contributors, const std::string& seed,
                   const std::string& circuit_path, const std::string& out_dir) {
    if (contributors == 0) {
        std::cerr << "error: NoContributions: at least one contributor required\n";
        return 1;
    }
    CircuitConfig cfg = load_circuit_descriptor(circuit_path);
    const PoseidonParams& params =
        cfg.salted ? PoseidonParams::instance_t5() : PoseidonParams::instance_t4();
    BillingCircuit circuit(cfg, params);

    SeededEntropy rng(std::string("b5g-keys-setup|") + seed);
    std::vector<std::vector<uint8_t>> contributions;
    for (uint32_t i = 0; i < contributors; i++) {
        std::vector<uint8_t> c(32);
        rng.fill(c.data(), c.size());
        contributions.push_back(std::move(c));
    }
    PublicParams pp = setup(128, contributions);
    KeyPair keys = keygen(pp, circuit.cs());

    std::filesystem::create_directories(out_dir);
    write_key_file(out_dir + "/params.b5gp", KeyFileKind::Params, pp.serialize());
    write_key_file(out_dir + "/billing.pk", KeyFileKind::ProvingKey, keys.pk.serialize());
    write_key_file(out_dir + "/billing.vk", KeyFileKind::VerificationKey, keys.vk.serialize());

    std::cout << "params_digest " << digest_hex(pp.digest()) << "\n";
    std::cout << "vk_digest " << digest_hex(keys.vk.digest()) << "\n";
    std::cout << "circuit_descriptor_digest " << digest_hex(cfg.descriptor_digest()) << "\n";
    std::cout << "constraints " << circuit.cs().num_constraints() << "\n";
    std::cout << "wrote " << out_dir << "/params.b5gp, billing.pk, billing.vk\n";
    return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& seed,
            const std::string& out_dir, unsigned workers) {
    Scenario scenario;
    try {
        scenario = Scenario::from_file(scenario_path);
    } catch (const B5gError& e) {
        std::cerr << "scenario invalid: " << e.what() << "\n";
        return EXIT_SCENARIO_INVALID;
    }
    RunOptions opts;
    opts.seed_override = seed;
    opts.out_dir = out_dir;
    opts.workers = workers;
    RunResult result = run_scenario(scenario, opts);

    for (const auto& v : result.verdicts) {
        std::cout << (v.ok ? "[ok] " : "[VIOLATION] ") << v.session_id << " expected="
                  << v.expected << " actual=" << v.actual;
        if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
        std::cout << "\n";
    }
    if (!result.privacy_ok) {
        for (const auto& f : result.privacy_findings) {
            std::cout << "[VIOLATION] privacy: " << f << "\n";
        }
    }
    std::cout << "final_digest " << digest_hex(result.final_digest) << "\n";
    if (!result.security_ok || !result.privacy_ok) {
        std::cerr << "security property violated\n";
        return EXIT_SECURITY_VIOLATION;
    }
    return 0;
}

int cmd_bench_prove(const std::string& backend, int iters, const std::string& out) {
    std::vector<BenchProveRow> rows{bench_prove(backend, iters)};
    write_prove_report(rows, out, {{"backend", backend}, {"iters", iters}});
    if (!out.empty() && out != "-") std::cout << "wrote " << out << " and " << out << ".json\n";
    return 0;
}

int cmd_bench_layers(const std::string& txs, const std::string& batch_size,
                     const std::string& out, unsigned workers) {
    auto counts = parse_u64_list(txs);
    auto sizes = parse_u64_list(batch_size);
    auto rows = bench_layers(counts, sizes, workers);
    write_layers_report(rows, out,
                        {{"txs", counts}, {"batch_sizes", sizes}, {"workers", workers}});
    if (!out.empty() && out != "-") std::cout << "wrote " << out << " and " << out << ".json\n";
    return 0;
}

int cmd_bench_latency(const std::string& loads, double cap, double rate, double base_latency,
                      const std::string& out) {
    auto load_list = parse_u64_list(loads);
    auto rows = bench_latency(load_list, cap, rate, base_latency);
    write_latency_report(rows, out,
                         {{"loads", load_list},
                          {"cap_tps", cap},
                          {"rate_tps", rate},
                          {"base_latency_s", base_latency}});
    if (!out.empty() && out != "-") std::cout << "wrote " << out << " and " << out << ".json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"B5GRoam zero-trust roaming settlement simulator"};
    app.require_subcommand(1);

    // keys setup
    auto* keys = app.add_subcommand("keys", "key management");
    keys->require_subcommand(1);
    auto* keys_setup = keys->add_subcommand("setup", "run the emulated ceremony and keygen");
    uint32_t contributors = 3;
    std::string seed = "b5groam-default-seed";
    std::string circuit_path;
    std::string keys_out = "keys";
    keys_setup->add_option("--contributors", contributors, "number of ceremony contributors")
        ->required();
    keys_setup->add_option("--seed", seed, "hex or ascii seed for deterministic contributions")
        ->required();
    keys_setup->add_option("--circuit", circuit_path, "circuit descriptor JSON")->required();
    keys_setup->add_option("--out", keys_out, "output directory (default: keys)");

    // run
    auto* run = app.add_subcommand("run", "execute a scenario");
    std::string scenario_path;
    std::string run_seed;
    std::string run_out;
    unsigned workers = 0;
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--seed", run_seed, "override the scenario seed");
    run->add_option("--out", run_out, "artifact output directory");
    run->add_option("--workers", workers, "proving worker threads (0 = hardware)");

    // bench
    auto* bench = app.add_subcommand("bench", "benchmarks");
    bench->require_subcommand(1);

    auto* bprove = bench->add_subcommand("prove", "proving time/memory per backend");
    std::string backend = "groth16";
    int iters = 10;
    std::string prove_out;
    bprove->add_option("--backend", backend, "groth16 | plonk | ultrahonk")->required();
    bprove->add_option("--iters", iters, "iterations (median reported)")->required();
    bprove->add_option("--out", prove_out, "CSV output path (default: stdout)");

    auto* blayers = bench->add_subcommand("layers", "L1-only vs L2 gas comparison");
    std::string txs = "60,100,200,500";
    std::string batch_size = "60";
    std::string layers_out;
    unsigned layer_workers = 0;
    blayers->add_option("--txs", txs, "comma-separated workload sizes")->required();
    blayers->add_option("--batch-size", batch_size,
                        "max batch size, single value or one per workload");
    blayers->add_option("--out", layers_out, "CSV output path (default: stdout)");
    blayers->add_option("--workers", layer_workers, "proving worker threads");

    auto* blatency = bench->add_subcommand("latency", "latency/throughput sweep");
    std::string loads = "500,1000,2500,5000";
    double cap = 100.0;
    double rate = 0.0;
    double base_latency = 0.1;
    std::string latency_out;
    blatency->add_option("--loads", loads, "comma-separated proof counts")->required();
    blatency->add_option("--cap", cap, "L1 capacity in tx/s (default 100)");
    blatency->add_option("--rate", rate, "arrival rate in tx/s (default: at capacity)");
    blatency->add_option("--base-latency", base_latency, "confirmation delay in seconds");
    blatency->add_option("--out", latency_out, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (keys_setup->parsed()) {
            return cmd_keys_setup(contributors, seed, circuit_path, keys_out);
        }
        if (run->parsed()) return cmd_run(scenario_path, run_seed, run_out, workers);
        if (bprove->parsed()) return cmd_bench_prove(backend, iters, prove_out);
        if (blayers->parsed()) return cmd_bench_layers(txs, batch_size, layers_out, layer_workers);
        if (blatency->parsed()) {
            return cmd_bench_latency(loads, cap, rate, base_latency, latency_out);
        }
    } catch (const B5gError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::ScenarioInvalid ? EXIT_SCENARIO_INVALID : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
