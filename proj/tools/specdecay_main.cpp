#include "specdecay/cliapp.hpp"

int main(int argc, char** argv) { return specdecay::run_cli(argc, argv); }
