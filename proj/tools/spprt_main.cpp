#include "spprt/cli_commands.hpp"

int main(int argc, char** argv) { return spprt::cli::run(argc, argv); }
