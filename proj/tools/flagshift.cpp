#include "flagshift/cli.hpp"

int main(int argc, char** argv) { return flagshift::cli::run(argc, argv); }
