#ifndef STHAWKES_TOOLS_CLI_HPP
#define STHAWKES_TOOLS_CLI_HPP

namespace CLI { class App; }

namespace hawkes::cli {

// Wires every subcommand and flag onto `app`; shared with the doc-coverage
// test so the surface can be introspected without spawning a process.
void buildCli(CLI::App& app);

int runCli(int argc, char** argv);

}  // namespace hawkes::cli

#endif
