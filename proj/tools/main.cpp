#include "reva/cli.hpp"

int main(int argc, char** argv) { return reva::run_command(argc, argv); }
