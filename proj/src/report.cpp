#include "lie2/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace lie2 {

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string format_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Report::add(std::string name, Real residual, Real tolerance,
                 std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  r.note = std::move(note);
  checks.push_back(std::move(r));
}

void Report::add_flag(std::string name, bool pass, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.residual = pass ? 0.0 : 1.0;
  r.tolerance = 0.0;
  r.pass = pass;
  r.note = std::move(note);
  checks.push_back(std::move(r));
}

bool Report::overall() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Report::render(OutputFormat format) const {
  std::ostringstream os;
  if (format == OutputFormat::Machine) {
    os << "report command=" << command << " grid=" << N << "," << M << "," << K
       << " seed=" << seed << "\n";
    for (const auto& in : inputs)
      os << "input path=" << in.path << " hash=" << in.hash << "\n";
    for (const auto& c : checks) {
      os << "check name=" << c.name << " residual=" << format_real(c.residual)
         << " tol=" << format_real(c.tolerance)
         << " verdict=" << (c.pass ? "pass" : "fail");
      if (!c.note.empty()) os << " note=" << c.note;
      os << "\n";
    }
    int failures = 0;
    for (const auto& c : checks)
      if (!c.pass) ++failures;
    os << "overall verdict=" << (overall() ? "pass" : "fail")
       << " checks=" << checks.size() << " failures=" << failures << "\n";
    return os.str();
  }

  os << "== " << command << " (grid " << N << "x" << M << "x" << K << ", seed "
     << seed << ") ==\n";
  for (const auto& in : inputs)
    os << "  input " << in.path << " [" << in.hash << "]\n";
  size_t width = 8;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    os << "  " << (c.pass ? "  ok  " : " FAIL ") << c.name
       << std::string(width - c.name.size() + 2, ' ')
       << format_real(c.residual);
    if (c.tolerance > 0) os << "  (tol " << format_real(c.tolerance) << ")";
    if (!c.note.empty()) os << "  " << c.note;
    os << "\n";
  }
  os << (overall() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace lie2
