#include "listrec/cli.hpp"

int main(int argc, char** argv) { return listrec::cli::run(argc, argv); }
