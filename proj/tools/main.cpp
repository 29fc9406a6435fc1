#include "cli.hpp"

int main(int argc, char** argv) { return metric_cluster::cli::run(argc, argv); }
