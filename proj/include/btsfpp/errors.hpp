#pragma once

#include <stdexcept>
#include <string>

namespace btsfpp {

/// Thrown when a series or quadrature fails to reach its tolerance.
/// Carries the partial value and the number of terms consumed so callers
/// can report diagnostics or fall back to another route.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, double partial_value, long long terms_used,
                      double estimated_error)
        : std::runtime_error(what), partial_value_(partial_value), terms_used_(terms_used),
          estimated_error_(estimated_error) {}

    double partial_value() const noexcept { return partial_value_; }
    long long terms_used() const noexcept { return terms_used_; }
    double estimated_error() const noexcept { return estimated_error_; }

  private:
    double partial_value_;
    long long terms_used_;
    double estimated_error_;
};

} // namespace btsfpp
