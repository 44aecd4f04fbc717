#include "pcsmri/cli.hpp"

int main(int argc, char **argv)
{
  return pcsmri::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
