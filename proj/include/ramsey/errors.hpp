#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

// Base for everything thrown by this library, so callers can catch one type
// at the CLI boundary and still discriminate below it.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Construction-time parameter violations (alpha out of (0,1), tau == 0, M <= N, ...).
class ParameterDomainError : public Error {
public:
    using Error::Error;
};

// Evaluation outside an operation's domain (k <= 0, labour <= 0, share outside
// the range of k/f(k), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// inverse_marginal target outside the range of f'.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

// Root finding found no admissible root. `degenerate` marks the case where only
// the trivial root k = 0 exists (e.g. CARA with delta + n_inf >= 1).
class NoRootError : public Error {
public:
    NoRootError(const std::string& what, bool degenerate_root)
        : Error(what), degenerate(degenerate_root) {}
    bool degenerate = false;
};

// Effective depreciation delta + n_inf <= 0: no steady state, capital explodes.
class InstabilityError : public Error {
public:
    using Error::Error;
};

// Shooting bracket failure (e.g. delta <= r, where no saddle exists).
class NoSaddlePathError : public Error {
public:
    using Error::Error;
};

// Adaptive step size underflowed; carries the last time the integrator reached.
class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, double t)
        : Error(what + " (last valid t = " + std::to_string(t) + ")"), last_time(t) {}
    double last_time = 0.0;
};

// Config text rejected; carries the offending key and 1-based line when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string key_, int line_)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what : what),
          key(std::move(key_)), line(line_) {}
    std::string key;
    int line = 0;
};

}  // namespace ramsey
