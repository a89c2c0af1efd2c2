#include <string>
#include <vector>

#include "bellmono/io.hpp"

int main(int argc, char** argv) {
  return bellmono::io::run_cli(std::vector<std::string>(argv, argv + argc));
}
