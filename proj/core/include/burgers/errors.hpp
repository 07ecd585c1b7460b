#ifndef BURGERS_ERRORS_HPP
#define BURGERS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace burgers {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested mode count or partition is too fine for the grid.
struct ResolutionError : Error {
    using Error::Error;
};

// Two fields live on different grids.
struct ShapeError : Error {
    using Error::Error;
};

// The requested time step exceeds the advective stability budget.
struct CflError : Error {
    CflError(const std::string& msg, double admissible)
        : Error(msg), admissible_dt(admissible) {}
    double admissible_dt;
};

// The state stopped being finite (or left the admissible step-size regime).
struct DivergenceError : Error {
    DivergenceError(const std::string& msg, double when) : Error(msg), t(when) {}
    double t;
};

// The gain-condition fixed point has no solution at these parameters.
struct InfeasibleError : Error {
    InfeasibleError(const std::string& msg, std::string bound, double last)
        : Error(msg), bound_name(std::move(bound)), last_iterate(last) {}
    std::string bound_name;
    double last_iterate;
};

// Requested decay exponent is at or below the admissible threshold.
struct RateTooSmallError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

struct FitDomainError : Error {
    using Error::Error;
};

// Certificate conditions unsatisfied: the claimed rate is not certified.
struct TheoremNotApplicableError : Error {
    using Error::Error;
};

}  // namespace burgers

#endif
