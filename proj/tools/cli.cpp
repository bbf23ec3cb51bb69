#include "cli.hpp"
#include <CLI11.hpp>

namespace hawkes::cli {
void buildCli(CLI::App& app) { (void)app; }
int runCli(int argc, char** argv) {
  CLI::App app{"spatiotemporal Hawkes process toolkit"};
  buildCli(app);
  CLI11_PARSE(app, argc, argv);
  return 0;
}
}  // namespace hawkes::cli
