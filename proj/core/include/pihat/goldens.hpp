// Versioned store of empirically derived constants: a value is recorded once
// with provenance and only replaced under an explicit regenerate flag.
#pragma once

#include <map>
#include <ostream>
#include <string>

namespace pihat {

class GoldenStore {
 public:
  struct Entry {
    double value = 0.0;
    std::string provenance;
    std::string date;  // YYYY-MM-DD of the recording run
  };

  enum class Outcome { kRecorded, kMatched, kMismatch, kRegenerated };

  GoldenStore() = default;

  // Missing file yields an empty store bound to the path; a malformed file
  // throws std::runtime_error.
  static GoldenStore load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry* find(const std::string& key) const;

  Outcome record(const std::string& key, double value, const std::string& provenance,
                 bool regenerate = false, double rel_tol = 1e-6);

  bool dirty() const { return dirty_; }
  // Rewrites the bound file; returns false (without throwing) if the
  // location is not writable.
  bool save() const;
  void render(std::ostream& os) const;  // the human-readable table

  const std::map<std::string, Entry>& entries() const { return entries_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::string, Entry> entries_;
  bool dirty_ = false;
};

}  // namespace pihat
