#include <iostream>

#include "qlik/cli/app.hpp"

int main(int argc, char** argv)
{
    return qlik::cli::run(argc, argv, std::cout, std::cerr);
}
