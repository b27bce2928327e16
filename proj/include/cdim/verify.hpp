#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cdim {

struct VerifyResult {
  std::string id;
  std::string statement;
  std::string status;  // pass | fail | skipped
  std::string expected;
  std::string measured;
  std::string detail;  // failure or skip explanation, empty on pass
  double ms = 0;
};

struct Claim {
  std::string id;
  std::string statement;
  std::string expected;
  std::function<std::string()> measure;
};

// every machine-checkable claim, ordered by id
const std::vector<Claim>& claim_registry();

// run the claims whose id contains the filter ("" runs all); results keep registry order
std::vector<VerifyResult> run_claims(const std::string& filter = "");

bool all_passed(const std::vector<VerifyResult>& results);

}  // namespace cdim
