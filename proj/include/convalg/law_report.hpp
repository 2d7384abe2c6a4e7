#pragma once

#include <deque>
#include <string>

#include <nlohmann/json.hpp>

namespace convalg {

// Outcome of one checked law. `witness` is a human-readable description of
// the first counterexample found (empty when the law holds or was skipped).
struct LawCheck {
  enum class Status { pass, fail, skip };

  std::string name;
  Status status = Status::pass;
  std::string witness;
  long long cases = 0;   // number of instances inspected
  bool sampled = false;  // true when the instance space was sampled, not enumerated

  bool failed() const { return status == Status::fail; }
};

struct LawReport {
  std::string subject;  // what was checked, e.g. "lifting over fusion-chain3 / bool"
  // deque: `add` hands out references that must survive later additions
  std::deque<LawCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.failed()) return false;
    return true;
  }

  LawCheck& add(std::string name) {
    checks.push_back(LawCheck{std::move(name)});
    return checks.back();
  }

  const LawCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  void merge(const LawReport& other, const std::string& prefix = "");

  nlohmann::json to_json() const;
  static LawReport from_json(const nlohmann::json& j);

  // One line per law: "  [pass] assoc (1024 cases)".
  std::string pretty() const;
};

std::string to_string(LawCheck::Status s);
LawCheck::Status status_from_string(const std::string& s);

} // namespace convalg
