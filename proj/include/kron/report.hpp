#pragma once

// Verification reports: one record per check, serialized as JSON lines with
// keys in the order check, status, trials, seed, witness.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kron/random.hpp"
#include "kron/serialize.hpp"

namespace kron {

enum class Status { pass, fail, skip };

inline const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

struct CheckResult {
  std::string check;
  Status status = Status::pass;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<Json> witness;

  bool passed() const noexcept { return status != Status::fail; }

  Json to_json() const {
    Json j = Json::object();
    j["check"] = check;
    j["status"] = status_name(status);
    j["trials"] = trials;
    j["seed"] = seed;
    if (witness) j["witness"] = *witness;
    return j;
  }
};

class Report {
 public:
  void add(CheckResult r) { records_.push_back(std::move(r)); }
  void append(const Report& o) { records_.insert(records_.end(), o.records_.begin(), o.records_.end()); }

  const std::vector<CheckResult>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }

  bool all_passed() const {
    for (const auto& r : records_)
      if (!r.passed()) return false;
    return true;
  }

  const CheckResult* find(std::string_view check) const {
    for (const auto& r : records_)
      if (r.check == check) return &r;
    return nullptr;
  }

  std::string to_jsonl() const {
    std::string out;
    for (const auto& r : records_) {
      out += r.to_json().dump();
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<CheckResult> records_;
};

/// Parameters shared by the randomized suites.
struct CampaignConfig {
  Field field = Field::rational();
  std::size_t dims = 3;  // largest factor order drawn per trial
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;

  void validate(std::size_t max_dims) const {
    if (dims < 1 || dims > max_dims)
      throw Error(Errc::invalid_config, "dims must lie in [1, " + std::to_string(max_dims) + "]");
    if (trials < 1) throw Error(Errc::invalid_config, "trials must be at least 1");
  }
};

/// Runs `trials` instances of a predicate that returns a witness on failure
/// and stops at the first failure. A thrown kron::Error fails the trial.
template <class Trial>
CheckResult run_trials(std::string check, std::uint64_t trials, std::uint64_t seed, Trial&& trial) {
  CheckResult r{std::move(check), Status::pass, 0, seed, std::nullopt};
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++r.trials;
    std::optional<Json> w;
    try {
      w = trial(t);
    } catch (const Error& e) {
      // an exception inside a trial is a failed trial, not an aborted run
      Json ej = Json::object();
      ej["error"] = e.what();
      if (!e.witness().is_null()) ej["detail"] = e.witness();
      w = std::move(ej);
    }
    if (w) {
      r.status = Status::fail;
      Json wj = Json::object();
      wj["trial"] = t;
      for (auto& [k, v] : w->items()) wj[k] = v;
      r.witness = std::move(wj);
      break;
    }
  }
  return r;
}

/// run_trials with a fresh Rng per trial derived from (seed, check, trial).
template <class Body>
CheckResult seeded_check(const std::string& check, const CampaignConfig& cfg, Body&& body) {
  return run_trials(check, cfg.trials, cfg.seed, [&](std::uint64_t t) -> std::optional<Json> {
    Rng rng(cfg.seed, check, t);
    return body(rng);
  });
}

/// Witness built from named matrices.
inline Json witness_of(std::initializer_list<std::pair<const char*, const Matrix*>> items) {
  Json w = Json::object();
  for (const auto& [name, m] : items) w[name] = matrix_to_json(*m);
  return w;
}

}  // namespace kron
