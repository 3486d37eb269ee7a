#include "toricsip/cli.hpp"

int main(int argc, char** argv) { return toricsip::cli::run(argc, argv); }
