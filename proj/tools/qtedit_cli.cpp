#include <string>
#include <vector>

#include "qtedit/cli.hpp"

int main(int argc, char** argv) {
  return qtedit::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
