#include "qwalk/cli.hpp"

int main(int argc, char** argv) {
  return qwalk::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
