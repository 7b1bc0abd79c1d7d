#include "k3tk/cli.hpp"

int main(int argc, char** argv) { return k3tk::cli::main_entry(argc, argv); }
