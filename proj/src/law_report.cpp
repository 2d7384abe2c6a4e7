#include "convalg/law_report.hpp"

#include <sstream>
#include <stdexcept>

namespace convalg {

std::string to_string(LawCheck::Status s) {
  switch (s) {
    case LawCheck::Status::pass: return "pass";
    case LawCheck::Status::fail: return "fail";
    case LawCheck::Status::skip: return "skip";
  }
  return "?";
}

LawCheck::Status status_from_string(const std::string& s) {
  if (s == "pass") return LawCheck::Status::pass;
  if (s == "fail") return LawCheck::Status::fail;
  if (s == "skip") return LawCheck::Status::skip;
  throw std::invalid_argument("unknown law status: " + s);
}

void LawReport::merge(const LawReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) {
    checks.push_back(c);
    if (!prefix.empty()) checks.back().name = prefix + c.name;
  }
}

nlohmann::json LawReport::to_json() const {
  nlohmann::json laws = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc = {{"name", c.name},
                         {"status", to_string(c.status)},
                         {"cases", c.cases},
                         {"sampled", c.sampled}};
    if (!c.witness.empty()) jc["witness"] = c.witness;
    laws.push_back(jc);
  }
  return nlohmann::json{{"subject", subject}, {"passed", ok()}, {"laws", laws}};
}

LawReport LawReport::from_json(const nlohmann::json& j) {
  LawReport r;
  r.subject = j.value("subject", "");
  for (const auto& jc : j.at("laws")) {
    LawCheck c;
    c.name = jc.at("name").get<std::string>();
    c.status = status_from_string(jc.at("status").get<std::string>());
    c.cases = jc.value("cases", 0LL);
    c.sampled = jc.value("sampled", false);
    c.witness = jc.value("witness", "");
    r.checks.push_back(std::move(c));
  }
  return r;
}

std::string LawReport::pretty() const {
  std::ostringstream os;
  if (!subject.empty()) os << subject << "\n";
  for (const auto& c : checks) {
    os << "  [" << to_string(c.status) << "] " << c.name << " (" << c.cases
       << (c.sampled ? " sampled" : "") << " cases)";
    if (!c.witness.empty()) os << "  witness: " << c.witness;
    os << "\n";
  }
  return os.str();
}

} // namespace convalg
