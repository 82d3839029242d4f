#include "commands.hpp"

int main(int argc, char** argv) { return hkc::cli::run_cli(argc, argv); }
