// Prints one PASS/FAIL line per primary acceptance criterion; exit status 0
// only when all seven pass.

#include <iostream>

#include "langdual/acceptance.hpp"
#include "langdual/hecke.hpp"

int main() {
  langdual::acceptance::Options opt;
  opt.journal = langdual::hecke::journal_path(std::nullopt);
  bool all = true;
  std::size_t count = 0;
  langdual::acceptance::run_primary(opt, [&](const langdual::acceptance::CriterionResult& r) {
    std::cout << langdual::acceptance::format_line(r) << std::endl;
    all = all && r.pass;
    ++count;
  });
  return all && count == 7 ? 0 : 1;
}
