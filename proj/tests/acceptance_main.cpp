// Integration gate: runs every acceptance criterion at its pinned tolerance
// and prints one pass/fail line per criterion. Exit status is nonzero when
// any criterion fails.
#include <iostream>

#include "gpev/acceptance.hpp"
#include "gpev/parallel.hpp"

int main(int argc, char** argv) {
  int threads = 1;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
  }
  gpev::set_threads(threads);

  gpev::acceptance::Options opts;
  opts.log = &std::cout;
  auto results = gpev::acceptance::run_all(opts);
  std::cout << "\n";
  gpev::acceptance::print_table(results, std::cout);
  return gpev::acceptance::all_passed(results) ? 0 : 1;
}
