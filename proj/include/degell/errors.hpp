#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace degell {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (non-finite entries, bad parameters, bad config).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A point or matrix outside the set where the evaluated object is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A request for a root branch that does not exist for the given exponent.
class BranchError : public Error {
public:
    using Error::Error;
};

/// phi(r, .) has no root on the requested branch; carries phi(r, s1(r)) > 0.
class NoRootError : public Error {
public:
    NoRootError(double r, double gap)
        : Error("no root: phi(r, s1(r)) = " + std::to_string(gap) + " > 0 at r = " + std::to_string(r)),
          r_(r), gap_(gap) {}
    double r() const noexcept { return r_; }
    double gap() const noexcept { return gap_; }

private:
    double r_;
    double gap_;
};

/// Ball radius above the existence threshold.
class ThresholdViolation : public Error {
public:
    ThresholdViolation(double radius, double rbar)
        : Error("domain radius R = " + std::to_string(radius) + " exceeds threshold Rbar = " +
                std::to_string(rbar)),
          radius_(radius), rbar_(rbar) {}
    double radius() const noexcept { return radius_; }
    double rbar() const noexcept { return rbar_; }

private:
    double radius_;
    double rbar_;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class UnsupportedDiscretization : public Error {
public:
    using Error::Error;
};

/// Iterative solver stopped at max_iter (or hit a NaN) without meeting its tolerance.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history)) {}
    const std::vector<double>& residual_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

} // namespace degell
