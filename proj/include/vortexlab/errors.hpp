#pragma once

#include <stdexcept>
#include <string>

namespace vortexlab {

/// Occupation or requested level exceeds the per-mode photon cutoff.
class CutoffError : public std::invalid_argument {
public:
    explicit CutoffError(const std::string& what) : std::invalid_argument(what) {}
};

/// Truncation loss of a squeezer (or displacement) exceeded the allowed bound.
class CutoffLeakageError : public std::runtime_error {
public:
    CutoffLeakageError(const std::string& what, double leakage)
        : std::runtime_error(what), leakage_(leakage) {}
    double leakage() const { return leakage_; }

private:
    double leakage_;
};

/// States passed to a binary operation do not share mode count / cutoffs.
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// The requested herald pattern has (numerically) zero probability.
class ImpossibleHeraldError : public std::runtime_error {
public:
    explicit ImpossibleHeraldError(const std::string& what) : std::runtime_error(what) {}
};

/// Entanglement ratio requested where the baseline is identically zero.
class UndefinedRatioError : public std::domain_error {
public:
    explicit UndefinedRatioError(const std::string& what) : std::domain_error(what) {}
};

} // namespace vortexlab
