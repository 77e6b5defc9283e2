#include "sclab/cli.hpp"

int main(int argc, char** argv) { return sclab::run_cli(argc, argv); }
