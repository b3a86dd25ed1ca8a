#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace afc {

// Numerical-precondition failures. Callers that can't fix the inputs should
// treat these as "exit 3" class errors; plain std::invalid_argument stays the
// "exit 2" validation class.
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class resolution_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class truncation_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class window_overlap_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class configuration_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

// Non-fatal diagnostics (edge-taper windowing, comb truncation, ...) go
// through a process-wide handler. Default prints "warning: ..." to stderr.
using warning_handler = std::function<void(const std::string&)>;

void set_warning_handler(warning_handler h);  // empty handler restores default
void warn(const std::string& message);

}  // namespace afc
