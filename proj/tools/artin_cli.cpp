#include "artin/cli.hpp"

int main(int argc, char** argv) { return artin::cli::run(argc, argv); }
