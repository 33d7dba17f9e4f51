#include "ocsim/cli.hpp"

int main(int argc, char** argv) { return ocsim::run_cli(argc, argv); }
