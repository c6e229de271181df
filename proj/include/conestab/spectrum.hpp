#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "conestab/rational.hpp"

namespace conestab {

template <class T>
struct SpectrumEntry {
  T value{};
  int multiplicity = 1;
};

/// Eigenvalues with multiplicities, kept in descending order.
template <class T>
class BasicSpectrum {
 public:
  BasicSpectrum() = default;

  explicit BasicSpectrum(std::vector<SpectrumEntry<T>> entries) : entries_(std::move(entries)) {
    std::erase_if(entries_, [](const auto& e) { return e.multiplicity <= 0; });
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const auto& a, const auto& b) { return a.value > b.value; });
  }

  /// One entry per eigenvalue, multiplicity one each.
  static BasicSpectrum from_values(const std::vector<T>& values) {
    std::vector<SpectrumEntry<T>> e;
    e.reserve(values.size());
    for (const auto& v : values) e.push_back({v, 1});
    return BasicSpectrum(std::move(e));
  }

  const std::vector<SpectrumEntry<T>>& entries() const { return entries_; }

  int dimension() const {
    int n = 0;
    for (const auto& e : entries_) n += e.multiplicity;
    return n;
  }

  std::vector<T> expanded() const {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(dimension()));
    for (const auto& e : entries_)
      for (int m = 0; m < e.multiplicity; ++m) out.push_back(e.value);
    return out;
  }

  T trace() const {
    T s{};
    for (const auto& e : entries_) s += e.value * e.multiplicity;
    return s;
  }

  template <class F>
  BasicSpectrum transformed(F&& f) const {
    std::vector<SpectrumEntry<T>> e;
    for (const auto& x : entries_) e.push_back({f(x.value), x.multiplicity});
    return BasicSpectrum(std::move(e));
  }

 private:
  std::vector<SpectrumEntry<T>> entries_;
};

using Spectrum = BasicSpectrum<double>;
using ExactSpectrum = BasicSpectrum<Rational>;

inline double spectral_radius(const Spectrum& s) {
  double r = 0.0;
  for (const auto& e : s.entries()) r = std::max(r, std::abs(e.value));
  return r;
}

inline bool is_trace_free(const Spectrum& s, double rel_tol = 1e-12) {
  return std::abs(s.trace()) <= rel_tol * std::max(spectral_radius(s), 1e-300) * s.dimension();
}

inline Spectrum to_double(const ExactSpectrum& s) {
  std::vector<SpectrumEntry<double>> e;
  for (const auto& x : s.entries()) e.push_back({to_double(x.value), x.multiplicity});
  return Spectrum(std::move(e));
}

}  // namespace conestab
