#include "brpois/cli.hpp"

int main(int argc, char** argv) { return brpois::cli::run(argc, argv); }
