#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmaxent/io.hpp"
#include "qmaxent/maxent.hpp"
#include "qmaxent/thermo.hpp"

namespace qmaxent {

/// 12-significant-digit formatting used for every number in reports,
/// so identical configs produce byte-identical machine blocks.
inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// A target energy: either an absolute value or a quantile of the spectral
/// span, written "q0.25" in config files.
struct EnergySpec {
    bool is_quantile = false;
    double value = 0.0;

    double resolve(const Hamiltonian& h) const {
        return is_quantile ? h.lambda_min() + value * h.spectral_span() : value;
    }
};

struct ExperimentConfig {
    std::size_t dim = 2;
    std::string hamiltonian = "qubit01";
    std::vector<EnergySpec> target_energies;
    std::size_t samples = 100;
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
    double slack = 1e-6;
    std::string output = "report.txt";
    std::size_t dim_env = 0; // 0 means the output dimension
};

inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    try {
        cfg.dim = j.at("dim").get<std::size_t>();
        cfg.hamiltonian = j.at("hamiltonian").get<std::string>();
        for (const json& e : j.at("target_energies")) {
            EnergySpec spec;
            if (e.is_string()) {
                const std::string s = e.get<std::string>();
                if (s.empty() || s[0] != 'q')
                    throw ParseError("energy spec string must look like \"q0.25\"");
                spec.is_quantile = true;
                spec.value = std::stod(s.substr(1));
                if (!(spec.value > 0.0) || !(spec.value < 1.0))
                    throw ParseError("energy quantile must be strictly inside (0, 1)");
            } else {
                spec.value = e.get<double>();
            }
            cfg.target_energies.push_back(spec);
        }
        cfg.samples = j.at("samples").get<std::size_t>();
        cfg.restarts = j.at("restarts").get<std::size_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("slack")) cfg.slack = j.at("slack").get<double>();
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
        if (j.contains("dim_env")) cfg.dim_env = j.at("dim_env").get<std::size_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config malformed: ") + e.what());
    }
    if (cfg.dim < 1 || cfg.restarts < 1) throw ParseError("config counts must be >= 1");
    if (cfg.target_energies.empty()) throw ParseError("config needs at least one target energy");
    return cfg;
}

struct EnergyBlock {
    double target = 0.0;
    Fact1Report fact1;
    TheoremVerdict theorem1;
};

struct VerificationRun {
    ExperimentConfig config;
    std::vector<double> energies;
    std::vector<EnergyBlock> blocks;
    std::size_t total_violations = 0;
};

/// Resolves the config against its Hamiltonian: loads it, checks the declared
/// dimension, and turns every energy spec into an absolute value strictly
/// inside the spectral span (throwing EnergyOutOfRange before any sampling).
inline std::pair<Hamiltonian, std::vector<double>> resolve_config(const ExperimentConfig& cfg) {
    Hamiltonian h = load_hamiltonian(cfg.hamiltonian);
    if (h.dim() != cfg.dim)
        throw ParseError("config dim " + std::to_string(cfg.dim) + " != Hamiltonian dim " +
                         std::to_string(h.dim()));
    std::vector<double> energies;
    for (const EnergySpec& spec : cfg.target_energies) {
        const double e = spec.resolve(h);
        if (!(e > h.lambda_min()) || !(e < h.lambda_max()))
            throw EnergyOutOfRange(e, h.lambda_min(), h.lambda_max());
        energies.push_back(e);
    }
    return {std::move(h), std::move(energies)};
}

/// Runs the Fact 1 and Theorem 1 suites for every target energy. All
/// randomness derives from the config seed; per-energy streams are xor-tagged
/// so blocks stay independent of each other and of evaluation order.
inline VerificationRun run_experiment(const ExperimentConfig& cfg) {
    auto [h, energies] = resolve_config(cfg);
    VerificationRun run;
    run.config = cfg;
    run.energies = energies;
    for (std::size_t k = 0; k < energies.size(); ++k) {
        const std::uint64_t seed_e = cfg.seed ^ (static_cast<std::uint64_t>(k + 1) << 40);
        EnergyBlock block;
        block.target = energies[k];
        block.fact1 = verify_fact1(h, energies[k], cfg.samples, seed_e);
        block.theorem1 = verify_theorem1(h, energies[k], cfg.samples, cfg.restarts, seed_e,
                                         cfg.slack, cfg.dim_env == 0 ? h.dim() : cfg.dim_env);
        run.total_violations += block.fact1.violations + block.theorem1.violations +
                                block.theorem1.only_if_violations;
        run.blocks.push_back(std::move(block));
    }
    return run;
}

namespace detail {

inline void append_row(std::string& out, const std::string& id, double pinned_energy,
                       double residual, double value, double ceiling, double gap,
                       double choi_distance, bool converged) {
    out += id;
    out += ',';
    out += fmt12(pinned_energy);
    out += ',';
    out += fmt12(residual);
    out += ',';
    out += fmt12(value);
    out += ',';
    out += fmt12(ceiling);
    out += ',';
    out += fmt12(gap);
    out += ',';
    out += fmt12(choi_distance);
    out += ',';
    out += converged ? '1' : '0';
    out += '\n';
}

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

/// The machine-readable block: one comma-separated row per sample with a
/// fixed column order, fenced so tooling can extract and diff it.
inline std::string render_machine_block(const VerificationRun& run) {
    std::string out;
    out += "sample_id,pinned_energy,energy_residual,certificate_value,thermal_ceiling,gap,"
           "choi_distance,converged\n";
    for (std::size_t k = 0; k < run.blocks.size(); ++k) {
        const EnergyBlock& block = run.blocks[k];
        const std::string ek = "e" + std::to_string(k);
        const Fact1Report& f = block.fact1;
        detail::append_row(out, "fact1-" + ek + "-gamma", f.gamma_row.pinned_energy,
                           f.gamma_row.energy_residual, f.gamma_row.entropy, f.ceiling,
                           f.gamma_row.gap, f.gamma_row.distance_to_gamma, true);
        for (std::size_t i = 0; i < f.rows.size(); ++i)
            detail::append_row(out, "fact1-" + ek + "-s" + std::to_string(i),
                               f.rows[i].pinned_energy, f.rows[i].energy_residual,
                               f.rows[i].entropy, f.ceiling, f.rows[i].gap,
                               f.rows[i].distance_to_gamma, true);
        const TheoremVerdict& t = block.theorem1;
        detail::append_row(out, "thm1-" + ek + "-thermalizer", t.thermalizer.pinned_energy,
                           t.thermalizer.energy_residual, t.thermalizer.certificate,
                           t.thermal_entropy, t.thermalizer.gap, t.thermalizer.choi_distance,
                           t.thermalizer.converged);
        for (std::size_t i = 0; i < t.samples.size(); ++i)
            detail::append_row(out, "thm1-" + ek + "-s" + std::to_string(i),
                               t.samples[i].pinned_energy, t.samples[i].energy_residual,
                               t.samples[i].certificate, t.thermal_entropy, t.samples[i].gap,
                               t.samples[i].choi_distance, t.samples[i].converged);
    }
    return out;
}

inline std::string render_summary(const VerificationRun& run) {
    std::string out;
    out += "For fact1 rows, certificate_value is the state entropy and choi_distance the\n"
           "max-abs state distance to gamma; thm1 rows carry channel-entropy certificates\n"
           "and Choi distances to 1 (x) gamma.\n\n";
    for (std::size_t k = 0; k < run.blocks.size(); ++k) {
        const EnergyBlock& b = run.blocks[k];
        out += "energy " + fmt12(b.target) + " (beta " + fmt12(b.theorem1.spec.beta) +
               ", ceiling " + fmt12(b.theorem1.thermal_entropy) + "):\n";
        out += "  fact1: samples=" + std::to_string(b.fact1.rows.size()) +
               " violations=" + std::to_string(b.fact1.violations) +
               " max_entropy=" + fmt12(b.fact1.max_entropy) +
               " min_gap=" + fmt12(b.fact1.min_gap) + "\n";
        std::vector<double> gaps;
        for (const TheoremSample& s : b.theorem1.samples) gaps.push_back(s.gap);
        const double gmin = gaps.empty() ? b.theorem1.thermalizer.gap
                                         : *std::min_element(gaps.begin(), gaps.end());
        const double gmax = gaps.empty() ? b.theorem1.thermalizer.gap
                                         : *std::max_element(gaps.begin(), gaps.end());
        out += "  thm1:  samples=" + std::to_string(b.theorem1.samples.size()) +
               " violations=" + std::to_string(b.theorem1.violations) +
               " only_if_violations=" + std::to_string(b.theorem1.only_if_violations) +
               " thermalizer_gap=" + fmt12(b.theorem1.thermalizer.gap) +
               " gap_min=" + fmt12(gmin) + " gap_median=" + fmt12(detail::median(gaps)) +
               " gap_max=" + fmt12(gmax) + "\n";
    }
    out += "total violations: " + std::to_string(run.total_violations) + "\n";
    return out;
}

inline std::string render_report(const VerificationRun& run) {
    std::string out = "# qmaxent verification report\n\n";
    out += "config: dim=" + std::to_string(run.config.dim) +
           " hamiltonian=" + run.config.hamiltonian + " energies=";
    for (std::size_t k = 0; k < run.energies.size(); ++k) {
        if (k) out += ',';
        out += fmt12(run.energies[k]);
    }
    out += " samples=" + std::to_string(run.config.samples) +
           " restarts=" + std::to_string(run.config.restarts) +
           " seed=" + std::to_string(run.config.seed) + " slack=" + fmt12(run.config.slack) +
           " dim_env=" +
           std::to_string(run.config.dim_env == 0 ? run.config.dim : run.config.dim_env) + "\n\n";
    out += "```\n";
    out += render_machine_block(run);
    out += "```\n\n";
    out += render_summary(run);
    return out;
}

/// Contents between the first pair of ``` fences (the checksummed region).
inline std::string extract_machine_block(const std::string& report) {
    const std::string fence = "```\n";
    const std::size_t open = report.find(fence);
    if (open == std::string::npos) throw ParseError("report has no fenced block");
    const std::size_t begin = open + fence.size();
    const std::size_t close = report.find("```", begin);
    if (close == std::string::npos) throw ParseError("report fence is not closed");
    return report.substr(begin, close - begin);
}

} // namespace qmaxent
