#include "cli_app.hpp"

int main(int argc, char** argv) { return rough_cli::dispatch(argc, argv); }
