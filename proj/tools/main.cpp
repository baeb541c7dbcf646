#include "cli.hpp"

int main(int argc, char** argv) { return adhoc::cli::run(argc, argv); }
