#ifndef AHS_CERTIFICATE_HPP
#define AHS_CERTIFICATE_HPP

#include <string>

#include <json.hpp>

#include "ahs/logform.hpp"

namespace ahs {

enum class Verdict { Pass, Fail, Undecided, OutOfValidatedRange, NotCertified };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Undecided: return "Undecided";
    case Verdict::OutOfValidatedRange: return "OutOfValidatedRange";
    case Verdict::NotCertified: return "NotCertified";
  }
  return "?";
}

// Record of one checked inequality: both sides, the verdict, the rule that
// produced it, and whatever exact witnesses make the check reproducible.
struct BoundCertificate {
  std::string rule;
  nlohmann::json lhs;
  nlohmann::json rhs;
  Verdict verdict = Verdict::Undecided;
  nlohmann::json witnesses = nlohmann::json::object();

  bool passed() const { return verdict == Verdict::Pass; }

  nlohmann::json to_json() const {
    return {{"rule", rule},
            {"lhs", lhs},
            {"rhs", rhs},
            {"verdict", to_string(verdict)},
            {"witnesses", witnesses}};
  }
};

}  // namespace ahs

#endif  // AHS_CERTIFICATE_HPP
