#include "approxdeg/cli.hpp"

int main(int argc, char** argv) { return approxdeg::cli::run(argc, argv); }
