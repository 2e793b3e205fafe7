#pragma once

#include <string>
#include <vector>

#include "lie2/types.hpp"

namespace lie2 {

enum class OutputFormat { Human, Machine };

struct CheckRecord {
  std::string name;
  Real residual = 0;
  Real tolerance = 0;
  bool pass = false;
  std::string note;
};

/// Input provenance: the path as given plus an FNV-1a hash of the bytes.
struct InputStamp {
  std::string path;
  std::string hash;
};

struct Report {
  std::string command;
  std::vector<InputStamp> inputs;
  int N = 0, M = 0, K = 0;
  uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  void add(std::string name, Real residual, Real tolerance,
           std::string note = {});
  /// Boolean check (tolerance-free).
  void add_flag(std::string name, bool pass, std::string note = {});
  bool overall() const;

  std::string render(OutputFormat format) const;
};

std::string fnv1a_hex(const std::string& bytes);
std::string format_real(Real v);

}  // namespace lie2
