#include "fns/cli.hpp"

int main(int argc, char** argv) { return fns::cli_main(argc, argv); }
