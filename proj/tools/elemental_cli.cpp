#include "cli_app.hpp"

int main(int argc, char** argv) { return elemental::cli::run(argc, argv); }
