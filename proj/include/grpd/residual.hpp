#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "grpd/smooth.hpp"

namespace grpd {

// Named residuals from one numerical check. Entries marked
// higher_is_better carry rank/singular-value diagnostics rather than
// residuals and are excluded from max_residual().
struct ResidualReport {
  struct Entry {
    std::string name;
    double value = 0.0;
    bool higher_is_better = false;
  };

  std::vector<Entry> entries;

  void add(std::string name, double value, bool higher_is_better = false) {
    entries.push_back({std::move(name), value, higher_is_better});
  }
  void track(const std::string& name, double value) {
    for (auto& e : entries)
      if (e.name == name) {
        e.value = std::max(e.value, value);
        return;
      }
    add(name, value);
  }

  double max_residual() const {
    double m = 0.0;
    for (const auto& e : entries)
      if (!e.higher_is_better) m = std::max(m, e.value);
    return m;
  }

  double get(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return e.value;
    throw contract_error("no such residual entry: " + std::string(name));
  }
  bool has(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return true;
    return false;
  }
};

// Deterministic sampling stream. Checks derive their seed from the run
// seed plus example and check names, so concurrent evaluation cannot
// change any number.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a, double b) {
    std::uniform_real_distribution<double> dist(a, b);
    return dist(eng_);
  }

  Vec box(const Vec& lo, const Vec& hi) {
    Vec p(lo.size());
    for (Eigen::Index k = 0; k < lo.size(); ++k) p[k] = uniform(lo[k], hi[k]);
    return p;
  }

  // uniform on the unit sphere
  Vec sphere(int n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Vec v(n);
    do {
      for (int k = 0; k < n; ++k) v[k] = dist(eng_);
    } while (v.norm() < 1e-8);
    return v / v.norm();
  }

  int pick(int n) {
    std::uniform_int_distribution<int> dist(0, n - 1);
    return dist(eng_);
  }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view a,
                                 std::string_view b = {}) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= '/';
    h *= 1099511628211ull;
  };
  mix(a);
  mix(b);
  return h ^ (base * 0x9e3779b97f4a7c15ull);
}

}  // namespace grpd
