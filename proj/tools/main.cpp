#include "cli.hpp"

int main(int argc, char** argv) { return hawkes::cli::runCli(argc, argv); }
