#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

namespace rgather {

/// Census of users indexed by snapped distance from a reference vertex:
/// counts.size() == K+1 and counts[i] is the number of users at rounded
/// distance exactly i. Stored as raw bytes so DP states hash cheaply.
struct DistProfile {
  std::string counts;

  DistProfile() = default;
  explicit DistProfile(int width) : counts(static_cast<size_t>(width), '\0') {}
  DistProfile(std::initializer_list<int> values) {
    counts.reserve(values.size());
    for (int v : values) counts.push_back(static_cast<char>(v));
  }

  int width() const { return static_cast<int>(counts.size()); }
  int at(int i) const { return static_cast<unsigned char>(counts[i]); }
  void set(int i, int v) { counts[i] = static_cast<char>(v); }
  void add(int i, int delta) { counts[i] = static_cast<char>(at(i) + delta); }

  int total() const {
    int s = 0;
    for (int i = 0; i < width(); ++i) s += at(i);
    return s;
  }
  bool all_zero() const {
    for (char c : counts) {
      if (c != '\0') return false;
    }
    return true;
  }

  friend bool operator==(const DistProfile& a, const DistProfile& b) = default;
};

/// Rightward shift for k >= 0, leftward for k < 0; entries pushed past
/// either end are discarded.
inline DistProfile shift(const DistProfile& p, int k) {
  DistProfile out(p.width());
  for (int i = 0; i < p.width(); ++i) {
    int j = i + k;
    if (j >= 0 && j < p.width()) out.set(j, p.at(i));
  }
  return out;
}

/// True when shifting by k would discard a nonzero entry.
inline bool shift_loses(const DistProfile& p, int k) {
  for (int i = 0; i < p.width(); ++i) {
    int j = i + k;
    if ((j < 0 || j >= p.width()) && p.at(i) != 0) return true;
  }
  return false;
}

inline bool fits_under(const DistProfile& p, const DistProfile& cap) {
  for (int i = 0; i < p.width(); ++i) {
    if (p.at(i) > cap.at(i)) return false;
  }
  return true;
}

}  // namespace rgather
