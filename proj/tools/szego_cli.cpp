#include "szego/cli.hpp"

int main(int argc, char** argv) { return szego::cli::main_entry(argc, argv); }
