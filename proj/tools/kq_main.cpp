#include "kq/cli.hpp"

int main(int argc, char** argv) { return kq::cli_main(argc, argv); }
