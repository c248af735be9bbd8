#include "ewjn/cli/app.hpp"

int main(int argc, char** argv) { return ewjn::cli::run(argc, argv); }
