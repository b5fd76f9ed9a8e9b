#include "leeyang/cli.hpp"

int main(int argc, char** argv) { return leeyang::cli::run(argc, argv); }
