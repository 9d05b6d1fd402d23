#include "pihat/cli.hpp"

int main(int argc, char** argv) { return pihat::run_main(argc, argv); }
