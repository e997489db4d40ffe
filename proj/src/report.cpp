#include "hgw/report.hpp"

#include <algorithm>

namespace hgw::cli {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Warn: return "warn";
    case Outcome::Info: return "info";
  }
  return "?";
}

Finding& Section::add(std::string check, Outcome verdict, double residual, io::Json witnesses) {
  findings.push_back({std::move(check), verdict, residual, std::move(witnesses)});
  return findings.back();
}

Finding& Section::expect(std::string check, bool ok, double residual, io::Json witnesses) {
  return add(std::move(check), ok ? Outcome::Pass : Outcome::Fail, residual, std::move(witnesses));
}

Report::Report(std::string command, std::uint64_t seed, double axiom_tol, double spectral_tol)
    : command_(std::move(command)), seed_(seed), axiom_tol_(axiom_tol), spectral_tol_(spectral_tol) {}

Section& Report::section(const Hypergroup& h) {
  sections_.push_back({h.name(), io::content_hash(h), {}, io::Json::object()});
  return sections_.back();
}

bool Report::any_failure() const {
  return std::any_of(sections_.begin(), sections_.end(), [](const Section& s) {
    return std::any_of(s.findings.begin(), s.findings.end(),
                       [](const Finding& f) { return f.verdict == Outcome::Fail; });
  });
}

std::string Report::render() const {
  io::Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command_;
  j["seed"] = seed_;
  j["tolerances"] = {{"axiom", axiom_tol_}, {"spectral", spectral_tol_}};
  std::size_t passed = 0, failed = 0, warned = 0;
  io::Json sections = io::Json::array();
  for (const auto& s : sections_) {
    io::Json findings = io::Json::array();
    for (const auto& f : s.findings) {
      passed += f.verdict == Outcome::Pass;
      failed += f.verdict == Outcome::Fail;
      warned += f.verdict == Outcome::Warn;
      findings.push_back({{"check", f.check},
                          {"verdict", outcome_name(f.verdict)},
                          {"residual", f.residual},
                          {"witnesses", f.witnesses}});
    }
    io::Json sj = {{"name", s.name}, {"hash", s.hash}, {"findings", std::move(findings)}};
    if (!s.data.empty()) sj["data"] = s.data;
    sections.push_back(std::move(sj));
  }
  j["hypergroups"] = std::move(sections);
  if (!data_.empty()) j["data"] = data_;
  j["summary"] = {{"pass", passed}, {"fail", failed}, {"warn", warned}, {"status", failed ? "fail" : "pass"}};
  return j.dump(2) + "\n";
}

}  // namespace hgw::cli
