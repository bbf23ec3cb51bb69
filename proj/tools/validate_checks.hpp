#ifndef STHAWKES_TOOLS_VALIDATE_CHECKS_HPP
#define STHAWKES_TOOLS_VALIDATE_CHECKS_HPP
#include <string>
namespace hawkes::cli {
// Runs the built-in correctness checks; prints one line per check.
// Returns the number of failures. injectFault perturbs one engine value to
// demonstrate failure reporting.
int runValidation(bool injectFault, std::string& report);
}
#endif
