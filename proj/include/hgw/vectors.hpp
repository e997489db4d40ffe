#pragma once

#include "hgw/linalg.hpp"

#include <cstddef>
#include <initializer_list>

namespace hgw {

using Complex = std::complex<double>;
using Index = std::size_t;

namespace detail {

/// Complex weight vector over the carrier of a finite hypergroup. The tag
/// keeps measures and functions from mixing silently; conversions go through
/// values().
template <class Tag>
class Weights {
 public:
  Weights() = default;
  explicit Weights(linalg::Vector values) : values_(std::move(values)) {}
  Weights(std::initializer_list<Complex> values)
      : values_(static_cast<Eigen::Index>(values.size())) {
    Eigen::Index i = 0;
    for (const Complex& v : values) values_(i++) = v;
  }

  static Weights zero(std::size_t k) { return Weights(linalg::Vector::Zero(static_cast<Eigen::Index>(k))); }
  static Weights constant(std::size_t k, Complex c) {
    return Weights(linalg::Vector::Constant(static_cast<Eigen::Index>(k), c));
  }
  static Weights unit(std::size_t k, Index x) {
    Weights w = zero(k);
    w.values_(static_cast<Eigen::Index>(x)) = 1.0;
    return w;
  }

  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  const linalg::Vector& values() const { return values_; }
  linalg::Vector& values() { return values_; }

  Complex operator[](Index i) const { return values_(static_cast<Eigen::Index>(i)); }
  Complex& operator[](Index i) { return values_(static_cast<Eigen::Index>(i)); }

  /// Sup norm.
  double max_abs() const { return values_.size() == 0 ? 0.0 : values_.cwiseAbs().maxCoeff(); }

  Weights& operator+=(const Weights& o) {
    values_ += o.values_;
    return *this;
  }
  Weights& operator-=(const Weights& o) {
    values_ -= o.values_;
    return *this;
  }
  Weights& operator*=(Complex c) {
    values_ *= c;
    return *this;
  }

  friend Weights operator+(Weights a, const Weights& b) { return a += b; }
  friend Weights operator-(Weights a, const Weights& b) { return a -= b; }
  friend Weights operator-(Weights a) { return a *= -1.0; }
  friend Weights operator*(Complex c, Weights a) { return a *= c; }
  friend Weights operator*(Weights a, Complex c) { return a *= c; }
  friend bool operator==(const Weights& a, const Weights& b) { return a.values_ == b.values_; }

 private:
  linalg::Vector values_;
};

struct MeasureTag {};
struct FuncTag {};

}  // namespace detail

/// Complex measure on a finite carrier: the mass at each element.
using Measure = detail::Weights<detail::MeasureTag>;

/// Complex-valued function on a finite carrier.
using Func = detail::Weights<detail::FuncTag>;

/// Unit point mass at x.
inline Measure dirac(std::size_t k, Index x) { return Measure::unit(k, x); }

/// Max |a - b|; sizes must agree.
template <class Tag>
double sup_distance(const detail::Weights<Tag>& a, const detail::Weights<Tag>& b) {
  return (a - b).max_abs();
}

}  // namespace hgw
