#include "disperlim/lab/cli.hpp"

int main(int argc, char** argv) { return disperlim::lab::cli_main(argc, argv); }
