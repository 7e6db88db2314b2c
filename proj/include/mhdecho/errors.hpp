#ifndef MHDECHO_ERRORS_HPP
#define MHDECHO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mhdecho {

// Invalid parameters, malformed config, inconsistent dimensions. CLI exit code 1.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Integrator or other numerical failure. CLI exit code 2.
class numerical_error : public std::runtime_error {
  public:
    numerical_error(const std::string& msg, double t)
        : std::runtime_error(msg + " (at t=" + std::to_string(t) + ")"), t_fail(t) {}
    double t_fail;
};

class step_underflow : public numerical_error {
  public:
    explicit step_underflow(double t) : numerical_error("step size underflow", t) {}
};

class nonfinite_state : public numerical_error {
  public:
    explicit nonfinite_state(double t) : numerical_error("non-finite state", t) {}
};

class tail_alarm : public numerical_error {
  public:
    tail_alarm(double t, double fraction)
        : numerical_error("truncation tail alarm, relative tail mass " + std::to_string(fraction), t) {}
};

} // namespace mhdecho

#endif
