#pragma once

namespace lrfield {

// Entry point of the lrfield tool; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace lrfield
