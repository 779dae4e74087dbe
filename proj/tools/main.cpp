#include "qastab/cli.hpp"

int main(int argc, char** argv) { return qastab::cli::run(argc, argv); }
