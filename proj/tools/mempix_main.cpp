#include "mempix/cli.hpp"

int main(int argc, char** argv) { return mempix::cli_main(argc, argv); }
