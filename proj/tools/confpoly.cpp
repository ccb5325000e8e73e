#include "confpoly/cli.hpp"

int main(int argc, char** argv) { return confpoly::run_cli(argc, argv); }
