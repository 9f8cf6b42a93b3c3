#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmaxent/entropy.hpp"
#include "qmaxent/harness.hpp"
#include "qmaxent/io.hpp"
#include "qmaxent/maxent.hpp"
#include "qmaxent/thermo.hpp"

namespace qmaxent {

namespace detail {

inline std::string fmt_fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

inline void print_matrix(std::ostream& out, const ComplexMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << '(' << fmt12(m(i, j).real()) << ", " << fmt12(m(i, j).imag()) << ')';
        }
        out << '\n';
    }
}

inline void print_entropy(std::ostream& out, double nats, const std::string& units,
                          const std::string& prefix = "") {
    if (units != "bits") out << prefix << fmt_fixed12(nats) << " nats\n";
    if (units != "nats") out << prefix << fmt_fixed12(nats / std::numbers::ln2) << " bits\n";
}

/// Channel files may carry either a Kraus list or a Choi operator; the Choi
/// route surfaces NotCP with the offending eigenvalue quantified.
inline KrausChannel load_channel(const std::string& path) {
    const json j = json_from_file(path);
    if (j.contains("kraus")) return channel_from_json(j);
    if (j.contains("matrix")) return kraus_from_choi(choi_from_json(j));
    throw ParseError("channel file needs a kraus list or a Choi matrix");
}

} // namespace detail

/// Command-line front end; args exclude the program name. Exit codes:
/// 0 success, 2 invalid input, 3 domain error (energy range or degenerate
/// Hamiltonian), 4 verification violation.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"channel entropy, thermal states, and max-entropy verification"};
    app.name("qmaxent");
    app.fallthrough(true);
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double tol = 1e-7;
    std::string units = "both";
    std::string output;
    app.add_option("--seed", seed, "seed for every random stream");
    app.add_option("--tol", tol, "optimizer step tolerance");
    app.add_option("--units", units, "entropy display units")
        ->check(CLI::IsMember({"nats", "bits"}));
    app.add_option("--output", output, "output file path");

    std::string state_file;
    CLI::App* cmd_entropy = app.add_subcommand("entropy-state", "entropy of a state file");
    cmd_entropy->add_option("state", state_file, "state file (matrix or amplitudes)")
        ->required();

    std::string thermal_h;
    double beta = 0.0, energy = 0.0;
    CLI::App* cmd_thermal = app.add_subcommand("thermal", "thermal state of a Hamiltonian");
    cmd_thermal->add_option("hamiltonian", thermal_h, "preset name or file")->required();
    CLI::Option* opt_beta = cmd_thermal->add_option("--beta", beta, "inverse temperature");
    CLI::Option* opt_energy = cmd_thermal->add_option("--energy", energy, "target mean energy");
    opt_beta->excludes(opt_energy);
    opt_energy->excludes(opt_beta);

    std::string channel_file;
    std::size_t restarts = 8;
    std::string witness_path;
    CLI::App* cmd_channel = app.add_subcommand("channel-entropy", "entropy of a channel file");
    cmd_channel->add_option("channel", channel_file, "channel file (Kraus or Choi)")->required();
    cmd_channel->add_option("--restarts", restarts, "optimizer restarts");
    cmd_channel->add_option("--witness", witness_path, "write the minimizing probe here");

    std::string moe_file;
    std::size_t moe_restarts = 8;
    CLI::App* cmd_moe = app.add_subcommand("min-output-entropy",
                                           "minimum output entropy of a channel file");
    cmd_moe->add_option("channel", moe_file, "channel file (Kraus or Choi)")->required();
    cmd_moe->add_option("--restarts", moe_restarts, "optimizer restarts");

    std::string config_file;
    CLI::App* cmd_verify = app.add_subcommand("verify",
                                              "run the Fact 1 and Theorem 1 suites");
    cmd_verify->add_option("--config", config_file, "experiment config file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_entropy->parsed()) {
            const DensityMatrix rho = state_from_json(json_from_file(state_file));
            detail::print_entropy(out, von_neumann_entropy(rho).value, units);
            return 0;
        }
        if (cmd_thermal->parsed()) {
            if (opt_beta->count() + opt_energy->count() != 1)
                throw ParseError("thermal needs exactly one of --beta or --energy");
            const Hamiltonian h = load_hamiltonian(thermal_h);
            const double b = opt_energy->count() ? beta_from_energy(h, energy).beta : beta;
            const ThermalState t = thermal_state(h, b);
            out << "beta = " << fmt12(t.spec.beta) << '\n';
            out << "Z = " << fmt12(t.spec.partition) << '\n';
            out << "E = " << fmt12(t.spec.energy) << '\n';
            out << "state:\n";
            detail::print_matrix(out, t.state.matrix());
            if (!output.empty()) write_text_file(output, state_to_json(t.state).dump(2) + "\n");
            return 0;
        }
        if (cmd_channel->parsed()) {
            const KrausChannel ch = detail::load_channel(channel_file);
            const EntropyCertificate cert = channel_entropy(ch, restarts, tol, seed);
            detail::print_entropy(out, cert.value, units, "S[N] = ");
            out << "converged: " << (cert.converged ? "yes" : "no") << '\n';
            out << "restarts used: " << cert.restarts_used << '\n';
            if (!witness_path.empty()) {
                const json w = pure_state_to_json(cert.witness,
                                                  std::make_pair(ch.dim_in(), ch.dim_in()));
                write_text_file(witness_path, w.dump(2) + "\n");
                out << "witness written to " << witness_path << '\n';
            }
            return 0;
        }
        if (cmd_moe->parsed()) {
            const KrausChannel ch = detail::load_channel(moe_file);
            detail::print_entropy(out, min_output_entropy(ch, moe_restarts, seed), units);
            return 0;
        }
        if (cmd_verify->parsed()) {
            ExperimentConfig cfg = config_from_json(json_from_file(config_file));
            if (app.count("--seed")) cfg.seed = seed;
            if (!output.empty()) cfg.output = output;
            const VerificationRun run = run_experiment(cfg);
            write_text_file(cfg.output, render_report(run));
            out << render_summary(run);
            out << "report written to " << cfg.output << '\n';
            return run.total_violations == 0 ? 0 : 4;
        }
    } catch (const EnergyOutOfRange& e) {
        err << "energy out of range; admissible interval (" << fmt12(e.emin()) << ", "
            << fmt12(e.emax()) << ")\n";
        return 3;
    } catch (const DegenerateHamiltonian& e) {
        err << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace qmaxent
