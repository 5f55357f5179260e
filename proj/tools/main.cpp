#include "simt/cli.hpp"

int main(int argc, char** argv) { return simt::run_cli(argc, argv); }
