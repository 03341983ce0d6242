#include "jointboost/cli.hpp"

int main(int argc, char** argv) { return jointboost::run_cli(argc, argv); }
