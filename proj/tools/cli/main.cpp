#include "commands.hpp"

int main(int argc, char** argv) { return uvarov::cli::dispatch(argc, argv); }
