#include "chebstep/cli.hpp"

int main(int argc, char** argv) { return chebstep::cli::run(argc, argv); }
