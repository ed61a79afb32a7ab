#include "sfcplace/cli.hpp"

int main(int argc, char** argv) { return sfcplace::run_cli(argc, argv); }
