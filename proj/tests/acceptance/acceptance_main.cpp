// Full-scale verification battery, one pass/fail line per criterion.
// Exit status is the number of failed criteria.

#include <cstddef>
#include <iostream>

#include "gossipsim/verify.hpp"

int main() {
  const auto results = gossipsim::run_verification(gossipsim::VerifyLevel::kFull, &std::cout);
  std::size_t failures = 0;
  for (const auto& r : results) failures += !r.passed;
  std::cout << results.size() - failures << "/" << results.size() << " criteria passed"
            << std::endl;
  return static_cast<int>(failures);
}
