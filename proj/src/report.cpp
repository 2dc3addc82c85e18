#include "forge/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace forge {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    default:
      return "skipped";
  }
}

bool CheckReport::ok() const {
  for (auto& l : lines)
    if (l.status == Status::Fail) return false;
  return true;
}

void CheckReport::expect(const std::string& id, bool cond, const std::string& why) {
  add({id, cond ? Status::Pass : Status::Fail, cond ? "" : why, 0});
}

void CheckReport::append(const CheckReport& o, const std::string& prefix) {
  for (auto l : o.lines) {
    if (!prefix.empty()) l.id = prefix + "." + l.id;
    lines.push_back(std::move(l));
  }
}

const CheckLine* CheckReport::find(const std::string& id) const {
  for (auto& l : lines)
    if (l.id == id) return &l;
  return nullptr;
}

std::string CheckReport::first_failure() const {
  for (auto& l : lines)
    if (l.status == Status::Fail) return l.id + ": " + l.witness;
  return "";
}

std::string CheckReport::table() const {
  std::ostringstream os;
  size_t w = 10;
  for (auto& l : lines) w = std::max(w, l.id.size());
  os << "report: " << object << "\n";
  for (auto& l : lines) {
    os << "  " << std::left << std::setw(int(w)) << l.id << "  " << std::setw(7) << status_name(l.status) << " "
       << std::fixed << std::setprecision(3) << l.seconds << "s";
    if (!l.witness.empty()) os << "  " << l.witness;
    os << "\n";
  }
  os << "  => " << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string CheckReport::to_json() const {
  nlohmann::json j;
  j["object"] = object;
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (auto& l : lines)
    j["checks"].push_back({{"id", l.id}, {"status", status_name(l.status)}, {"witness", l.witness}, {"seconds", l.seconds}});
  return j.dump(2);
}

CheckReport CheckReport::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  CheckReport r;
  r.object = j.at("object").get<std::string>();
  for (auto& c : j.at("checks")) {
    CheckLine l;
    l.id = c.at("id").get<std::string>();
    auto s = c.at("status").get<std::string>();
    l.status = s == "pass" ? Status::Pass : s == "fail" ? Status::Fail : Status::Skipped;
    l.witness = c.at("witness").get<std::string>();
    l.seconds = c.at("seconds").get<double>();
    r.lines.push_back(l);
  }
  return r;
}

void Checker::fail(const std::string& at, long long idx) {
  if (failed && (idx < 0 || where <= idx)) return;
  failed = true;
  witness = at;
  where = idx;
}

void Checker::zero(const Vec& residual, const std::string& at, long long idx) {
  if (residual.is_zero()) return;
  if (failed && (idx < 0 || where <= idx)) return;
  std::string res = residual.str();
  if (res.size() > 400) res = res.substr(0, 400) + "...";
  fail(at + " residual " + res, idx);
}

void Checker::expect(bool cond, const std::string& at, long long idx) {
  if (!cond) fail(at, idx);
}

void run_check(CheckReport& r, const std::string& id, const std::function<void(Checker&)>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Checker c;
  fn(c);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.add({id, c.failed ? Status::Fail : Status::Pass, c.witness, s});
}

void run_sweep(CheckReport& r, const std::string& id, Index n, const std::function<void(Index, Checker&)>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned nt = unsigned(std::min<Index>(hw, n < 8 ? 1 : n / 4 + 1));
  std::vector<Checker> local(nt);
  std::atomic<Index> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto work = [&](unsigned t) {
    try {
      for (;;) {
        Index i = next.fetch_add(1);
        if (i >= n) break;
        fn(i, local[t]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(err_mu);
      if (!err) err = std::current_exception();
      next = n;
    }
  };
  if (nt <= 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (unsigned t = 0; t < nt; ++t) th.emplace_back(work, t);
    for (auto& t : th) t.join();
  }
  if (err) std::rethrow_exception(err);
  Checker best;
  for (auto& c : local)
    if (c.failed && (!best.failed || c.where < best.where)) best = c;
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.add({id, best.failed ? Status::Fail : Status::Pass, best.witness, s});
}

void require_ok(const CheckReport& r, const std::string& what) {
  if (!r.ok()) throw VerificationError(what + ": " + r.first_failure(), r);
}

}  // namespace forge
