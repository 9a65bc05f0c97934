#include "htau/cli.hpp"

int main(int argc, char** argv)
{
    return htau::run_cli(argc, argv);
}
