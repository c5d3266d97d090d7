#include <string>
#include <vector>

#include "topstat/cli.hpp"

int main(int argc, char** argv) {
  return topstat::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
