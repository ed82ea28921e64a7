#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace obmstop {

/// Invalid argument: non-finite, non-positive or out-of-range input.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation called in a regime where it does not apply.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An iterative method gave up. Carries the last residuals for diagnostics.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> residuals, int iterations)
        : std::runtime_error(what), residuals_(std::move(residuals)), iterations_(iterations) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }
    int iterations() const noexcept { return iterations_; }

private:
    std::vector<double> residuals_;
    int iterations_;
};

}  // namespace obmstop
