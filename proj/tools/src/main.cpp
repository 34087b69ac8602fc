#include <iostream>

#include "plapcli/app.hpp"

int main(int argc, char** argv) { return plap::cli::main_entry(argc, argv, std::cout, std::cerr); }
