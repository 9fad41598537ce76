#include "blowdown/cli.hpp"

int main(int argc, char** argv) { return blowdown::cli::main(argc, argv); }
