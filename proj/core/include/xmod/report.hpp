#pragma once

#include <string>
#include <utility>
#include <vector>

namespace xmod {

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;  // first violating basis tuple when !ok
};

// Per-axiom pass/fail list. Validators never throw on mathematical failure;
// they record it here.
class Report {
 public:
  void add(std::string name, bool ok, std::string detail = {}) {
    checks_.push_back({std::move(name), ok, std::move(detail)});
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.ok, c.detail});
  }
  bool ok() const {
    for (const auto& c : checks_)
      if (!c.ok) return false;
    return true;
  }
  const std::vector<Check>& checks() const { return checks_; }
  std::string first_failure() const {
    for (const auto& c : checks_)
      if (!c.ok) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
    return {};
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace xmod
