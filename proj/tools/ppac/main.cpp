#include "commands.hpp"

int main(int argc, char** argv) { return ppac::cli::main_entry(argc, argv); }
