#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace pointing {

/// Per-spacecraft decision dimension: three Euler-angle deviations plus the
/// telescope-angle deviation.
inline constexpr std::size_t kStateDim = 4;

/// Number of spacecraft in the constellation.
inline constexpr std::size_t kPlayers = 3;

/// A 4-vector of angles in μrad (δα, δφ, δψ, δℓ).
struct StateVec4 {
  std::array<double, kStateDim> c{};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }

  StateVec4& operator+=(const StateVec4& o) {
    for (std::size_t i = 0; i < kStateDim; ++i) c[i] += o.c[i];
    return *this;
  }
  StateVec4& operator-=(const StateVec4& o) {
    for (std::size_t i = 0; i < kStateDim; ++i) c[i] -= o.c[i];
    return *this;
  }
  StateVec4& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend StateVec4 operator+(StateVec4 a, const StateVec4& b) { return a += b; }
  friend StateVec4 operator-(StateVec4 a, const StateVec4& b) { return a -= b; }
  friend StateVec4 operator*(StateVec4 a, double s) { return a *= s; }
  friend StateVec4 operator*(double s, StateVec4 a) { return a *= s; }
  friend bool operator==(const StateVec4&, const StateVec4&) = default;

  double dot(const StateVec4& o) const {
    double s = 0.0;
    for (std::size_t i = 0; i < kStateDim; ++i) s += c[i] * o.c[i];
    return s;
  }
  double squared_norm() const { return dot(*this); }
  double norm() const { return std::sqrt(squared_norm()); }

  bool is_finite() const {
    for (double v : c)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

/// One StateVec4 per spacecraft (references u, plant states δx, truths δx_0).
using JointVec = std::array<StateVec4, kPlayers>;

/// The three spacecraft pairs in output order: (1,2), (1,3), (2,3).
inline constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

/// Index into kPairs for the unordered pair {i, j}, i != j.
constexpr std::size_t pair_index(std::size_t i, std::size_t j) {
  if (i > j) {
    const std::size_t t = i;
    i = j;
    j = t;
  }
  return i == 0 ? (j == 1 ? 0 : 1) : 2;
}

}  // namespace pointing
