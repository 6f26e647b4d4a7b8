#include "qkerr/cli.hpp"

int main(int argc, char** argv) { return qkerr::run_cli(argc, argv); }
