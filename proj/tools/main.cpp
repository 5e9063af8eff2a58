#include "fracstep/cli/commands.hpp"

int main(int argc, char** argv) { return fracstep::cli::run_cli(argc, argv); }
