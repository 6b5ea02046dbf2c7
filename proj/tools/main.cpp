#include "ahs/cli.hpp"

int main(int argc, char** argv) { return ahs::cli::run(argc, argv); }
