#include "scatterlab/cli.hpp"

int main(int argc, char** argv)
{
    return scatterlab::run(argc, argv);
}
