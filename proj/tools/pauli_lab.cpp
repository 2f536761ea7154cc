#include "pauli/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
	return pauli::run_cli(argc, argv, std::cout, std::cerr);
}
