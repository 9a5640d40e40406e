#include "taulab/cli.hpp"

int main(int argc, char** argv) { return taulab::run(argc, argv); }
