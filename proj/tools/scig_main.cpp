#include "scig/cli.hpp"

int main(int argc, char** argv) { return scig::run_cli(argc, argv); }
