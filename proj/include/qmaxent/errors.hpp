#pragma once

#include <stdexcept>
#include <string>

namespace qmaxent {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotSquare : public Error {
public:
    NotSquare(std::size_t rows, std::size_t cols)
        : Error("matrix is not square: " + std::to_string(rows) + "x" + std::to_string(cols)) {}
};

class NotHermitian : public Error {
public:
    explicit NotHermitian(double deviation)
        : Error("matrix is not Hermitian, max-abs deviation " + std::to_string(deviation)),
          deviation_(deviation) {}
    double deviation() const { return deviation_; }

private:
    double deviation_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

class NotPSD : public Error {
public:
    explicit NotPSD(double min_eigenvalue)
        : Error("operator is not positive semidefinite, min eigenvalue " +
                std::to_string(min_eigenvalue)),
          min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// A Choi operator with a negative eigenvalue below tolerance: the map is not CP.
class NotCP : public Error {
public:
    explicit NotCP(double min_eigenvalue)
        : Error("map is not completely positive, Choi min eigenvalue " +
                std::to_string(min_eigenvalue)),
          min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

class RankOutOfRange : public Error {
public:
    RankOutOfRange(std::size_t rank, std::size_t dim)
        : Error("rank " + std::to_string(rank) + " outside [1, " + std::to_string(dim) + "]") {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error("scalar function domain error: " + msg) {}
};

class EnergyOutOfRange : public Error {
public:
    EnergyOutOfRange(double e, double emin, double emax)
        : Error("energy " + std::to_string(e) + " outside the open spectral span (" +
                std::to_string(emin) + ", " + std::to_string(emax) + ")"),
          energy_(e), emin_(emin), emax_(emax) {}
    double energy() const { return energy_; }
    double emin() const { return emin_; }
    double emax() const { return emax_; }

private:
    double energy_, emin_, emax_;
};

class DegenerateHamiltonian : public Error {
public:
    explicit DegenerateHamiltonian(const std::string& msg)
        : Error("degenerate Hamiltonian: " + msg) {}
};

/// File or config content that does not parse or violates a stated invariant.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

} // namespace qmaxent
