#pragma once

#include "hgw/hypercore.hpp"
#include "hgw/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hgw::cli {

inline constexpr int kSchemaVersion = 1;

enum class Outcome { Pass, Fail, Warn, Info };

const char* outcome_name(Outcome o);

struct Finding {
  std::string check;
  Outcome verdict = Outcome::Pass;
  double residual = 0.0;
  io::Json witnesses = io::Json::array();
};

/// Findings about one hypergroup.
struct Section {
  std::string name;
  std::string hash;
  std::vector<Finding> findings;
  io::Json data = io::Json::object();

  Finding& add(std::string check, Outcome verdict, double residual = 0.0, io::Json witnesses = io::Json::array());
  /// Pass when ok, Fail otherwise.
  Finding& expect(std::string check, bool ok, double residual = 0.0, io::Json witnesses = io::Json::array());
};

/// Structured command report. Rendering is deterministic: no clocks, no
/// addresses, fixed key order.
class Report {
 public:
  Report(std::string command, std::uint64_t seed, double axiom_tol, double spectral_tol);

  Section& section(const Hypergroup& h);
  io::Json& data() { return data_; }

  bool any_failure() const;
  std::string render() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  double axiom_tol_;
  double spectral_tol_;
  std::vector<Section> sections_;
  io::Json data_ = io::Json::object();
};

}  // namespace hgw::cli
