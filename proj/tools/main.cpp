#include "snnlab/cli.hpp"

int main(int argc, char** argv) { return snnlab::run_cli(argc, argv); }
