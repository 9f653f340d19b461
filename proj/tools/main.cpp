#include "lrfield/cli.hpp"

int main(int argc, char** argv) { return lrfield::run_cli(argc, argv); }
