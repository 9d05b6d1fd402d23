#include "pihat/goldens.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pihat {

namespace {

std::string today() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
  return buf;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GoldenStore GoldenStore::load(const std::string& path) {
  GoldenStore store;
  store.path_ = path;
  std::ifstream in(path);
  if (!in) return store;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string key, value, prov, date;
    if (!std::getline(row, key, '\t') || !std::getline(row, value, '\t') ||
        !std::getline(row, prov, '\t') || !std::getline(row, date, '\t'))
      throw std::runtime_error("GoldenStore: malformed row in " + path + ": " + line);
    Entry e;
    e.value = std::stod(value);
    e.provenance = prov;
    e.date = date;
    store.entries_[key] = e;
  }
  return store;
}

const GoldenStore::Entry* GoldenStore::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

GoldenStore::Outcome GoldenStore::record(const std::string& key, double value,
                                         const std::string& provenance, bool regenerate,
                                         double rel_tol) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_[key] = {value, provenance, today()};
    dirty_ = true;
    return Outcome::kRecorded;
  }
  double scale = std::max({std::abs(it->second.value), std::abs(value), 1e-300});
  if (std::abs(it->second.value - value) <= rel_tol * scale) return Outcome::kMatched;
  if (!regenerate) return Outcome::kMismatch;
  it->second = {value, provenance, today()};
  dirty_ = true;
  return Outcome::kRegenerated;
}

bool GoldenStore::save() const {
  if (path_.empty()) return false;
  std::ofstream out(path_);
  if (!out) return false;
  out << "# pihat golden store v1\n";
  out << "# key\tvalue\tprovenance\tdate\n";
  for (const auto& [key, e] : entries_)
    out << key << '\t' << format_value(e.value) << '\t' << e.provenance << '\t' << e.date << '\n';
  return static_cast<bool>(out);
}

void GoldenStore::render(std::ostream& os) const {
  os << "key,value,provenance,date\n";
  for (const auto& [key, e] : entries_)
    os << key << ',' << format_value(e.value) << ',' << e.provenance << ',' << e.date << '\n';
}

}  // namespace pihat
