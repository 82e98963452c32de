#include "irops/cli/app.hpp"

int main(int argc, char** argv) { return irops::cli::run_subcommand(argc, argv); }
