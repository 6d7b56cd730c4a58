#include "ncrot/cli.hpp"

int main(int argc, char** argv) { return ncrot::cli::main(argc, argv); }
