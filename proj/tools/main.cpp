#include "cli.hpp"

int main(int argc, char** argv) { return triple_couple::cli::cli_main(argc, argv); }
