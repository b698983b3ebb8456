#include <bornoconv/cli.hpp>

int main(int argc, char** argv) { return bornoconv::cli::run(argc, argv); }
