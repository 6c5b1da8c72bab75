#include "frobzeta/zeta.hpp"

int main(int argc, char** argv) { return frobzeta::cli_main(argc, argv); }
