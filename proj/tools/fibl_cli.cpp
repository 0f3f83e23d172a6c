#include "cli_app.hpp"

int main(int argc, char** argv) { return fibl::cli::run(argc, argv, std::cout, std::cerr); }
