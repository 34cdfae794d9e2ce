#include <clocale>

#include "flock/cli.hpp"

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");  // locale-independent numeric formatting
  return flock::run_command(argc, argv);
}
