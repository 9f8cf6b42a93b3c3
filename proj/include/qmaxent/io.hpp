#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmaxent/channels.hpp"
#include "qmaxent/matrix.hpp"
#include "qmaxent/states.hpp"
#include "qmaxent/thermo.hpp"

namespace qmaxent {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Matrix format: {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
// States add an optional "dims": [dR, dA]; Hamiltonians an optional "units".
// Channels: {"dim_in", "dim_out", "kraus": [matrix, ...]};
// Choi: {"dim_r", "dim_a", "matrix": {...}}.
// ---------------------------------------------------------------------------

inline json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ParseError("matrix object needs fields rows, cols, entries");
    std::size_t rows = 0, cols = 0;
    std::vector<Complex> entries;
    try {
        rows = j.at("rows").get<std::size_t>();
        cols = j.at("cols").get<std::size_t>();
        for (const json& e : j.at("entries")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("entries must be [re, im] pairs");
            entries.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix fields malformed: ") + e.what());
    }
    return ComplexMatrix(rows, cols, std::move(entries)); // rejects non-finite entries
}

inline json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

inline json state_to_json(const BipartiteState& s) {
    json j = matrix_to_json(s.state().matrix());
    j["dims"] = {s.dim_r(), s.dim_a()};
    return j;
}

inline json pure_state_to_json(const PureState& v, std::optional<std::pair<std::size_t,
                               std::size_t>> dims = std::nullopt) {
    ComplexMatrix column(v.dim(), 1);
    for (std::size_t i = 0; i < v.dim(); ++i) column(i, 0) = v.amplitudes()[i];
    json j = matrix_to_json(column);
    if (dims) j["dims"] = {dims->first, dims->second};
    return j;
}

/// Reads a state file: a square matrix parses as a density matrix, a column
/// vector as pure-state amplitudes (its projector is returned).
inline DensityMatrix state_from_json(const json& j) {
    const ComplexMatrix m = matrix_from_json(j);
    if (m.cols() == 1 && m.rows() > 1) {
        std::vector<Complex> amps(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) amps[i] = m(i, 0);
        return DensityMatrix::from_pure(PureState(m.rows(), std::move(amps)));
    }
    return DensityMatrix(m);
}

inline BipartiteState bipartite_from_json(const json& j) {
    if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").size() != 2)
        throw ParseError("bipartite state needs dims = [dimR, dimA]");
    std::size_t dr = 0, da = 0;
    try {
        dr = j.at("dims")[0].get<std::size_t>();
        da = j.at("dims")[1].get<std::size_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("dims malformed: ") + e.what());
    }
    return BipartiteState(dr, da, state_from_json(j));
}

inline json hamiltonian_to_json(const Hamiltonian& h, const std::string& units = "") {
    json j = matrix_to_json(h.matrix());
    if (!units.empty()) j["units"] = units;
    return j;
}

inline Hamiltonian hamiltonian_from_json(const json& j) {
    return Hamiltonian(matrix_from_json(j)); // "units" is a free-text annotation, not interpreted
}

inline json channel_to_json(const KrausChannel& ch) {
    json kraus = json::array();
    for (const ComplexMatrix& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
    return json{{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", std::move(kraus)}};
}

inline KrausChannel channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim_in") || !j.contains("dim_out") || !j.contains("kraus"))
        throw ParseError("channel object needs fields dim_in, dim_out, kraus");
    std::size_t din = 0, dout = 0;
    std::vector<ComplexMatrix> ops;
    try {
        din = j.at("dim_in").get<std::size_t>();
        dout = j.at("dim_out").get<std::size_t>();
        for (const json& k : j.at("kraus")) ops.push_back(matrix_from_json(k));
    } catch (const json::exception& e) {
        throw ParseError(std::string("channel fields malformed: ") + e.what());
    }
    return KrausChannel(din, dout, std::move(ops));
}

inline json choi_to_json(const ChoiOperator& c) {
    return json{{"dim_r", c.dim_r()}, {"dim_a", c.dim_a()}, {"matrix", matrix_to_json(c.matrix())}};
}

inline ChoiOperator choi_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim_r") || !j.contains("dim_a") || !j.contains("matrix"))
        throw ParseError("Choi object needs fields dim_r, dim_a, matrix");
    std::size_t dr = 0, da = 0;
    try {
        dr = j.at("dim_r").get<std::size_t>();
        da = j.at("dim_a").get<std::size_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("Choi fields malformed: ") + e.what());
    }
    return ChoiOperator(dr, da, matrix_from_json(j.at("matrix")));
}

// ---------------------------------------------------------------------------
// Files and presets
// ---------------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

inline json json_from_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

/// Named Hamiltonians for reproducible documentation examples.
inline std::optional<Hamiltonian> hamiltonian_preset(const std::string& name) {
    if (name == "qubit01") return Hamiltonian(ComplexMatrix::diagonal({0.0, 1.0}));
    if (name == "qutrit012") return Hamiltonian(ComplexMatrix::diagonal({0.0, 1.0, 2.0}));
    if (name == "qubitX") return Hamiltonian(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
    return std::nullopt;
}

/// A preset name or a path to a Hamiltonian file.
inline Hamiltonian load_hamiltonian(const std::string& name_or_path) {
    if (auto preset = hamiltonian_preset(name_or_path)) return *preset;
    return hamiltonian_from_json(json_from_file(name_or_path));
}

} // namespace qmaxent
