#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tdlc/inference.hpp"

namespace tdlc::inference::detail {

// Read/tighten access to the bound table for one rule firing.
class Context {
 public:
  using Recorder = std::function<void(const Fact&, std::vector<Fact>)>;

  Context(const Database& db, std::map<Key, Bound>& bounds, Recorder recorder)
      : db_(db), bounds_(bounds), recorder_(std::move(recorder)) {}

  const Database& db() const { return db_; }
  int inf() const { return db_.inf(); }
  int cap() const { return db_.cap; }

  int lo(const Key& k) const {
    auto it = bounds_.find(k);
    return it == bounds_.end() ? 0 : it->second.lo;
  }
  int hi(const Key& k) const {
    auto it = bounds_.find(k);
    return it == bounds_.end() ? db_.top(k.attr) : it->second.hi;
  }
  Fact lo_fact(const Key& k) const { return {k, Side::Lo, lo(k)}; }
  Fact hi_fact(const Key& k) const { return {k, Side::Hi, hi(k)}; }

  void raise(const Key& k, int v, std::vector<Fact> premises) {
    v = std::min(v, db_.top(k.attr));
    if (v <= lo(k)) return;
    slot(k).lo = v;
    changed = true;
    if (recorder_) recorder_({k, Side::Lo, v}, std::move(premises));
  }
  void lower(const Key& k, int v, std::vector<Fact> premises) {
    if (v >= hi(k)) return;
    slot(k).hi = v;
    changed = true;
    if (recorder_) recorder_({k, Side::Hi, v}, std::move(premises));
  }

  bool changed = false;

 private:
  Bound& slot(const Key& k) {
    auto it = bounds_.find(k);
    if (it == bounds_.end()) it = bounds_.emplace(k, Bound{0, db_.top(k.attr)}).first;
    return it->second;
  }

  const Database& db_;
  std::map<Key, Bound>& bounds_;
  Recorder recorder_;
};

struct RuleInstance {
  std::string rule;
  std::function<void(Context&)> fire;
};

std::vector<RuleInstance> instantiate(const Database& db);

}  // namespace tdlc::inference::detail
