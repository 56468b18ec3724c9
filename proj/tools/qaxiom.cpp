#include <iostream>

#include "qaxiom/frontend/dispatch.hpp"

int main(int argc, char** argv) {
  const auto result = qaxiom::frontend::dispatch(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
