#include <cstdint>
#include <iostream>
#include <string>

#include "acceptance/criteria.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--seed N]\n";
      return 2;
    }
  }
  std::cout << "seed " << seed << "\n";
  bool all = true;
  for (const auto& r : acceptance::run_all(seed)) {
    std::cout << acceptance::format(r) << "\n";
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
