#include <chrono>
#include <iostream>

#include "properties.hpp"

int main() {
  auto t0 = std::chrono::steady_clock::now();
  int failed = 0;
  for (const props::Suite& s : props::run_all()) {
    bool ok = s.failures == 0;
    failed += !ok;
    std::cout << (ok ? "pass" : "FAIL") << "  " << s.name << " (" << s.cases << " cases)";
    if (!ok) std::cout << " — " << s.failures << " failures; first: " << s.detail;
    std::cout << "\n";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << "total " << ms << " ms\n";
  return failed ? 1 : 0;
}
