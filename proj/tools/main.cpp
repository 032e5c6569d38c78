#include "becthermo/cli.hpp"

int main(int argc, char** argv) { return becthermo::run_cli(argc, argv); }
