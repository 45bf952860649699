#include "swiptsim/execute.hpp"

int main(int argc, char** argv) { return swiptsim::run_cli(argc, argv); }
