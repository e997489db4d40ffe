#pragma once

#include "hgw/hypercore.hpp"
#include "hgw/vectors.hpp"

namespace hgw {

/// <mu, f> = sum_x f(x) mu(x).
Complex pair(const Measure& mu, const Func& f);

/// (mu * nu)(z) = sum_{x,y} mu(x) nu(y) c(x, y, z).
Measure convolve(const Hypergroup& h, const Measure& mu, const Measure& nu);

/// f(x * y) = sum_z c(x, y, z) f(z).
Complex spread(const Hypergroup& h, const Func& f, Index x, Index y);

/// (tau_y f)(x) = f(x * y).
Func translate(const Hypergroup& h, const Func& f, Index y);

/// (mu * f)(x) = sum_u mu(u) f(x * u^), so that delta_{y^} * f = tau_y f.
Func convolve(const Hypergroup& h, const Measure& mu, const Func& f);

/// (phi . mu)(x) = phi(x) mu(x).
Measure module_action(const Func& phi, const Measure& mu);

/// Pointwise product of functions.
Func pointwise(const Func& f, const Func& g);

/// Matrix of tau_y: entry (x, z) is c(x, y, z).
linalg::Matrix translation_matrix(const Hypergroup& h, Index y);

}  // namespace hgw
