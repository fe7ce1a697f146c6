#include "cli.hpp"

int main(int argc, char** argv) { return graphpse::cli::run_cli(argc, argv); }
