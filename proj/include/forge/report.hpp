#pragma once
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/linalg.hpp"

namespace forge {

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct CheckLine {
  std::string id;
  Status status = Status::Pass;
  std::string witness;  // multi-index and residual on failure, info otherwise
  double seconds = 0;
};

struct CheckReport {
  std::string object;
  std::vector<CheckLine> lines;

  bool ok() const;
  void add(CheckLine l) { lines.push_back(std::move(l)); }
  void pass(const std::string& id, const std::string& info = "") { add({id, Status::Pass, info, 0}); }
  void fail(const std::string& id, const std::string& why) { add({id, Status::Fail, why, 0}); }
  void info(const std::string& id, const std::string& text) { add({id, Status::Skipped, text, 0}); }
  void expect(const std::string& id, bool cond, const std::string& why = "");
  void append(const CheckReport& o, const std::string& prefix = "");
  const CheckLine* find(const std::string& id) const;
  std::string first_failure() const;
  std::string table() const;
  std::string to_json() const;
  static CheckReport from_json(const std::string& text);
};

// First-failure recorder for one named check.
struct Checker {
  bool failed = false;
  std::string witness;
  long long where = -1;  // sweep index of the witness, for determinism

  void zero(const Vec& residual, const std::string& at, long long idx = -1);
  void expect(bool cond, const std::string& at, long long idx = -1);
  void fail(const std::string& at, long long idx = -1);
};

// Runs fn once and records a timed line.
void run_check(CheckReport& r, const std::string& id, const std::function<void(Checker&)>& fn);
// Runs fn(i) for i < n on worker threads; the lowest-index failure is kept.
void run_sweep(CheckReport& r, const std::string& id, Index n, const std::function<void(Index, Checker&)>& fn);

class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, CheckReport rep) : std::runtime_error(what), report(std::move(rep)) {}
  CheckReport report;
};

// Raised for malformed input (CLI exit status 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_ok(const CheckReport& r, const std::string& what);

}  // namespace forge
