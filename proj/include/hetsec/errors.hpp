#pragma once

#include <stdexcept>
#include <string>

namespace hetsec {

/// Invalid or inconsistent configuration input (bad file, bad field, bad
/// parameter combination).  CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine could not produce a trustworthy result (series did not
/// converge, non-finite intermediate, unsupported argument range).  CLI maps
/// this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature ran out of subdivision budget.  Carries the best
/// estimate so far together with its error bound so callers can decide
/// whether to salvage or abort.
class QuadratureFailure : public NumericalError {
public:
    QuadratureFailure(const std::string& what, double estimate, double error_bound)
        : NumericalError(what), estimate(estimate), error_bound(error_bound) {}

    double estimate;
    double error_bound;
};

/// An internal geometric identity was violated beyond floating-point noise
/// (e.g. a law-of-cosines argument far outside [-1, 1]).  Indicates a bug in
/// the caller rather than bad user input.
class GeometryError : public std::logic_error {
public:
    explicit GeometryError(const std::string& what) : std::logic_error(what) {}
};

/// The threshold optimizer could not reach the requested secrecy target
/// within its bracket ceiling.  CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double achieved, double requested)
        : std::runtime_error(what), achieved(achieved), requested(requested) {}

    double achieved;   ///< best secrecy probability reached inside the bracket
    double requested;  ///< the target that could not be met
};

}  // namespace hetsec
