#pragma once

#include <functional>
#include <optional>
#include <string>

namespace voamodes {

struct Failure {
  std::string where;
  std::string lhs;
  std::string rhs;
};

// Case counter that remembers the first failing case.
struct Tally {
  long run = 0;
  long passed = 0;
  std::optional<Failure> first_failure;

  void record(bool ok, const std::function<Failure()>& describe) {
    ++run;
    if (ok) {
      ++passed;
    } else if (!first_failure) {
      first_failure = describe();
    }
  }
  void merge(const Tally& o) {
    run += o.run;
    passed += o.passed;
    if (!first_failure && o.first_failure) first_failure = o.first_failure;
  }
  bool ok() const { return run == passed; }
};

}  // namespace voamodes
