#include <vector>
#include <string>

#include "cauchywell/cli.hpp"

int main(int argc, char** argv)
{
    return cauchywell::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
