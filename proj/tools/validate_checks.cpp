#include "validate_checks.hpp"
namespace hawkes::cli {
int runValidation(bool injectFault, std::string& report) {
  (void)injectFault; report = "";
  return 0;
}
}
