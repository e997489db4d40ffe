#include "hgw/algebra.hpp"

#include "hgw/errors.hpp"

namespace hgw {

namespace {

void require_size(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected)
    throw StructuralError(std::string(what) + ": size " + std::to_string(got) + " does not match carrier size " +
                          std::to_string(expected));
}

}  // namespace

Complex pair(const Measure& mu, const Func& f) {
  require_size(f.size(), mu.size(), "pair");
  return mu.values().cwiseProduct(f.values()).sum();
}

Measure convolve(const Hypergroup& h, const Measure& mu, const Measure& nu) {
  const std::size_t k = h.order();
  require_size(mu.size(), k, "convolve");
  require_size(nu.size(), k, "convolve");
  Measure out = Measure::zero(k);
  for (Index x = 0; x < k; ++x) {
    if (mu[x] == 0.0) continue;
    for (Index y = 0; y < k; ++y) {
      const Complex a = mu[x] * nu[y];
      if (a == 0.0) continue;
      auto row = h.product(x, y);
      for (Index z = 0; z < k; ++z)
        if (row[z] != 0.0) out[z] += a * row[z];
    }
  }
  return out;
}

Complex spread(const Hypergroup& h, const Func& f, Index x, Index y) {
  require_size(f.size(), h.order(), "spread");
  Complex s = 0.0;
  auto row = h.product(x, y);
  for (Index z = 0; z < row.size(); ++z)
    if (row[z] != 0.0) s += row[z] * f[z];
  return s;
}

Func translate(const Hypergroup& h, const Func& f, Index y) {
  const std::size_t k = h.order();
  Func out = Func::zero(k);
  for (Index x = 0; x < k; ++x) out[x] = spread(h, f, x, y);
  return out;
}

Func convolve(const Hypergroup& h, const Measure& mu, const Func& f) {
  const std::size_t k = h.order();
  require_size(mu.size(), k, "convolve");
  require_size(f.size(), k, "convolve");
  Func out = Func::zero(k);
  for (Index u = 0; u < k; ++u) {
    if (mu[u] == 0.0) continue;
    const Index ui = h.inverse(u);
    for (Index x = 0; x < k; ++x) out[x] += mu[u] * spread(h, f, x, ui);
  }
  return out;
}

Measure module_action(const Func& phi, const Measure& mu) {
  require_size(phi.size(), mu.size(), "module_action");
  return Measure(phi.values().cwiseProduct(mu.values()));
}

Func pointwise(const Func& f, const Func& g) {
  require_size(f.size(), g.size(), "pointwise");
  return Func(f.values().cwiseProduct(g.values()));
}

linalg::Matrix translation_matrix(const Hypergroup& h, Index y) {
  const auto k = static_cast<Eigen::Index>(h.order());
  linalg::Matrix t(k, k);
  for (Eigen::Index x = 0; x < k; ++x)
    for (Eigen::Index z = 0; z < k; ++z) t(x, z) = h.weight(static_cast<Index>(x), y, static_cast<Index>(z));
  return t;
}

}  // namespace hgw
