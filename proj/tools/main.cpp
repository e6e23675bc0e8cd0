#include "ponpar/cli.hpp"

int main(int argc, char** argv) { return ponpar::runCli(argc, argv); }
