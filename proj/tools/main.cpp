#include "circlepack/cli.hpp"

int main(int argc, char** argv) { return circlepack::cli::run(argc, argv); }
