#pragma once

#include <stdexcept>
#include <string>

namespace levyhit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter outside its admissible range, a malformed grid, etc.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A quadrature, root-finding or inversion scheme that did not reach its
/// tolerance within budget. Carries what was achieved.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double achieved_tol, double truncation = 0.0)
        : Error(what + " (achieved tol " + std::to_string(achieved_tol) + ", truncation " +
                std::to_string(truncation) + ")"),
          achieved_tol_(achieved_tol),
          truncation_(truncation) {}

    double achieved_tol() const noexcept { return achieved_tol_; }
    double truncation() const noexcept { return truncation_; }

private:
    double achieved_tol_;
    double truncation_;
};

/// A theorem hypothesis that the toolkit cannot certify for the given symbol.
/// `missing()` names the certificate or flag that would be needed.
class HypothesisError : public Error {
public:
    HypothesisError(const std::string& what, std::string missing)
        : Error(what + " [missing: " + missing + "]"), missing_(std::move(missing)) {}

    const std::string& missing() const noexcept { return missing_; }

private:
    std::string missing_;
};

/// Monte Carlo run that produced too few usable samples.
class InsufficientSampleError : public Error {
public:
    InsufficientSampleError(const std::string& what, double survival)
        : Error(what), survival_(survival) {}

    double survival() const noexcept { return survival_; }

private:
    double survival_;
};

}  // namespace levyhit
