#pragma once

#include <optional>
#include <string>
#include <vector>

namespace twh {

enum class Status { pass, fail, not_found };

const char* status_name(Status s);

struct Report {
  std::string id;
  std::string eq;  // the identity being checked, written out as a formula
  Status status = Status::pass;
  std::string witness;  // first mismatch, both sides
  std::string detail;
  std::optional<long> found;  // minimal k or l when a search was run
  double millis = 0;

  bool ok() const { return status == Status::pass; }
  void fail(std::string w) {
    if (status == Status::pass) {
      status = Status::fail;
      witness = std::move(w);
    }
  }
  // merge a sub-check: first failure wins
  void absorb(const Report& r) {
    if (!r.ok() && ok()) {
      status = r.status;
      witness = r.id.empty() ? r.witness : r.id + ": " + r.witness;
    }
  }
};

}  // namespace twh
