#include "hgw/hypercore.hpp"

#include "hgw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hgw {

Hypergroup::Hypergroup(std::string name, std::vector<std::string> elements, Index identity,
                       std::vector<Index> involution, std::vector<double> table)
    : name_(std::move(name)),
      elements_(std::move(elements)),
      identity_(identity),
      involution_(std::move(involution)),
      table_(std::move(table)) {
  const std::size_t k = elements_.size();
  if (k == 0) throw StructuralError("hypergroup has no elements");
  if (identity_ >= k) throw StructuralError("identity index out of range");
  if (involution_.size() != k)
    throw StructuralError("involution has " + std::to_string(involution_.size()) + " entries, expected " +
                          std::to_string(k));
  for (Index v : involution_)
    if (v >= k) throw StructuralError("involution index out of range");
  if (table_.size() != k * k * k)
    throw StructuralError("table has " + std::to_string(table_.size()) + " weights, expected k^3 = " +
                          std::to_string(k * k * k));
  for (double w : table_)
    if (!std::isfinite(w)) throw StructuralError("table contains a non-finite weight");
}

Hypergroup Hypergroup::with_name(std::string name) const {
  Hypergroup h = *this;
  h.name_ = std::move(name);
  return h;
}

Hypergroup Hypergroup::with_weight(Index x, Index y, Index z, double w) const {
  const std::size_t k = order();
  if (x >= k || y >= k || z >= k) throw StructuralError("weight index out of range");
  Hypergroup h = *this;
  h.table_[(x * k + y) * k + z] = w;
  return h;
}

Hypergroup Hypergroup::with_compact_part(std::vector<Index> part) const {
  for (Index x : part)
    if (x >= order()) throw StructuralError("compact part index out of range");
  Hypergroup h = *this;
  h.compact_part_ = std::move(part);
  return h;
}

bool Hypergroup::is_group(double tol) const {
  const std::size_t k = order();
  for (Index x = 0; x < k; ++x)
    for (Index y = 0; y < k; ++y) {
      auto row = product(x, y);
      if (std::none_of(row.begin(), row.end(), [tol](double w) { return std::abs(w - 1.0) <= tol; }))
        return false;
    }
  return true;
}

std::optional<Index> Hypergroup::find(const std::string& label) const {
  auto it = std::find(elements_.begin(), elements_.end(), label);
  if (it == elements_.end()) return std::nullopt;
  return static_cast<Index>(it - elements_.begin());
}

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Probability: return "probability";
    case Axiom::Commutativity: return "commutativity";
    case Axiom::Identity: return "identity";
    case Axiom::Associativity: return "associativity";
    case Axiom::Involution: return "involution";
    case Axiom::Antihomomorphism: return "antihomomorphism";
  }
  return "?";
}

bool AxiomReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

namespace {

void record(AxiomCheck& check, double residual, std::vector<Index> witness) {
  if (residual > check.residual) {
    check.residual = residual;
    check.witness = std::move(witness);
  }
}

}  // namespace

AxiomReport validate(const Hypergroup& h, double tol) {
  const std::size_t k = h.order();
  const Index o = h.identity();
  AxiomReport report;
  report.tolerance = tol;
  for (std::size_t i = 0; i < kAllAxioms.size(); ++i) report.checks[i].axiom = kAllAxioms[i];
  auto& prob = report.checks[0];
  auto& comm = report.checks[1];
  auto& ident = report.checks[2];
  auto& assoc = report.checks[3];
  auto& invol = report.checks[4];
  auto& anti = report.checks[5];

  for (Index x = 0; x < k; ++x)
    for (Index y = 0; y < k; ++y) {
      double sum = 0.0;
      for (Index z = 0; z < k; ++z) {
        const double w = h.weight(x, y, z);
        sum += w;
        if (w < 0.0) record(prob, -w, {x, y, z});
        record(comm, std::abs(w - h.weight(y, x, z)), {x, y, z});
      }
      record(prob, std::abs(sum - 1.0), {x, y});
    }

  for (Index y = 0; y < k; ++y)
    for (Index z = 0; z < k; ++z) record(ident, std::abs(h.weight(o, y, z) - (z == y ? 1.0 : 0.0)), {o, y, z});

  // (delta_x * delta_y) * delta_z against delta_x * (delta_y * delta_z).
  std::vector<double> lhs(k), rhs(k);
  for (Index x = 0; x < k; ++x)
    for (Index y = 0; y < k; ++y)
      for (Index z = 0; z < k; ++z) {
        std::fill(lhs.begin(), lhs.end(), 0.0);
        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (Index w = 0; w < k; ++w) {
          const double a = h.weight(x, y, w);
          if (a != 0.0)
            for (Index v = 0; v < k; ++v) lhs[v] += a * h.weight(w, z, v);
          const double b = h.weight(y, z, w);
          if (b != 0.0)
            for (Index v = 0; v < k; ++v) rhs[v] += b * h.weight(x, w, v);
        }
        for (Index v = 0; v < k; ++v) record(assoc, std::abs(lhs[v] - rhs[v]), {x, y, z, v});
      }

  if (h.inverse(o) != o) record(invol, 1.0, {o});
  for (Index x = 0; x < k; ++x) {
    const Index xi = h.inverse(x);
    if (h.inverse(xi) != x) record(invol, 1.0, {x});
    for (Index y = 0; y < k; ++y) {
      const double w = h.weight(x, y, o);
      if (y == xi) {
        if (w <= tol) record(invol, 1.0, {x, y});
      } else {
        record(invol, std::abs(w), {x, y});
      }
      for (Index z = 0; z < k; ++z)
        record(anti, std::abs(h.weight(xi, h.inverse(y), h.inverse(z)) - h.weight(y, x, z)), {x, y, z});
    }
  }

  for (auto& c : report.checks) c.pass = c.residual <= tol;
  return report;
}

linalg::Matrix invariant_measures(const Hypergroup& h, double rank_tol) {
  const auto k = static_cast<Eigen::Index>(h.order());
  // lambda * delta_y = lambda  <=>  sum_x lambda(x) c(x, y, z) = lambda(z).
  linalg::Matrix stacked(k * k, k);
  for (Eigen::Index y = 0; y < k; ++y)
    for (Eigen::Index z = 0; z < k; ++z)
      for (Eigen::Index x = 0; x < k; ++x)
        stacked(y * k + z, x) = h.weight(static_cast<Index>(x), static_cast<Index>(y), static_cast<Index>(z)) -
                                (x == z ? 1.0 : 0.0);
  return linalg::nullspace(stacked, rank_tol);
}

Measure haar_measure(const Hypergroup& h, double tol) {
  const linalg::Matrix fixed = invariant_measures(h, kRankTol);
  if (fixed.cols() != 1)
    throw InfeasibleError("translation-invariant measures form a space of dimension " +
                          std::to_string(fixed.cols()) + " (expected 1)");
  const linalg::Vector v = fixed.col(0);
  const Complex total = v.sum();
  if (std::abs(total) <= tol) throw InfeasibleError("invariant measure has zero total mass");
  linalg::Vector lambda = v / total;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i).imag()) > tol || lambda(i).real() < -tol)
      throw InfeasibleError("invariant measure is not nonnegative");
    lambda(i) = std::max(lambda(i).real(), 0.0);
  }
  return Measure(lambda / lambda.sum());
}

Hypergroup from_abelian_group(const std::vector<std::size_t>& orders) {
  if (orders.empty()) throw ArgumentError("from_abelian_group: no factors");
  std::size_t k = 1;
  for (std::size_t n : orders) {
    if (n == 0) throw ArgumentError("from_abelian_group: zero order");
    k *= n;
  }
  const std::size_t r = orders.size();
  auto digits = [&](Index x) {
    std::vector<std::size_t> d(r);
    for (std::size_t i = r; i-- > 0;) {
      d[i] = x % orders[i];
      x /= orders[i];
    }
    return d;
  };
  auto compose = [&](const std::vector<std::size_t>& d) {
    Index x = 0;
    for (std::size_t i = 0; i < r; ++i) x = x * orders[i] + d[i];
    return x;
  };

  std::vector<std::string> labels(k);
  std::vector<Index> inv(k);
  std::vector<double> table(k * k * k, 0.0);
  for (Index x = 0; x < k; ++x) {
    const auto dx = digits(x);
    std::ostringstream label;
    if (r == 1) {
      label << dx[0];
    } else {
      label << '(';
      for (std::size_t i = 0; i < r; ++i) label << (i ? "," : "") << dx[i];
      label << ')';
    }
    labels[x] = label.str();
    std::vector<std::size_t> neg(r);
    for (std::size_t i = 0; i < r; ++i) neg[i] = (orders[i] - dx[i]) % orders[i];
    inv[x] = compose(neg);
    for (Index y = 0; y < k; ++y) {
      const auto dy = digits(y);
      std::vector<std::size_t> s(r);
      for (std::size_t i = 0; i < r; ++i) s[i] = (dx[i] + dy[i]) % orders[i];
      table[(x * k + y) * k + compose(s)] = 1.0;
    }
  }
  std::ostringstream name;
  for (std::size_t i = 0; i < r; ++i) name << (i ? "x" : "") << 'Z' << orders[i];
  return Hypergroup(name.str(), std::move(labels), 0, std::move(inv), std::move(table));
}

Hypergroup two_point(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ArgumentError("two_point: theta must lie in (0, 1]");
  std::vector<double> table(8, 0.0);
  auto at = [&](Index x, Index y, Index z) -> double& { return table[(x * 2 + y) * 2 + z]; };
  at(0, 0, 0) = 1.0;
  at(0, 1, 1) = 1.0;
  at(1, 0, 1) = 1.0;
  at(1, 1, 0) = theta;
  at(1, 1, 1) = 1.0 - theta;
  std::ostringstream name;
  name << "D(" << theta << ')';
  return Hypergroup(name.str(), {"0", "i"}, 0, {0, 1}, std::move(table));
}

namespace {

void require_group(const std::vector<std::vector<Index>>& t, Index& identity) {
  const std::size_t n = t.size();
  if (n == 0) throw ArgumentError("group table is empty");
  for (const auto& row : t) {
    if (row.size() != n) throw ArgumentError("group table is not square");
    std::vector<bool> seen(n, false);
    for (Index v : row) {
      if (v >= n) throw ArgumentError("group table entry out of range");
      if (seen[v]) throw ArgumentError("group table row is not a permutation");
      seen[v] = true;
    }
  }
  for (Index b = 0; b < n; ++b) {
    std::vector<bool> seen(n, false);
    for (Index a = 0; a < n; ++a) {
      if (seen[t[a][b]]) throw ArgumentError("group table column is not a permutation");
      seen[t[a][b]] = true;
    }
  }
  std::optional<Index> e;
  for (Index a = 0; a < n && !e; ++a) {
    bool unit = true;
    for (Index b = 0; b < n && unit; ++b) unit = t[a][b] == b && t[b][a] == b;
    if (unit) e = a;
  }
  if (!e) throw ArgumentError("group table has no identity");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) throw ArgumentError("group table is not associative");
  identity = *e;
}

}  // namespace

Hypergroup conjugacy_class_hypergroup(const std::vector<std::vector<Index>>& t) {
  Index e = 0;
  require_group(t, e);
  const std::size_t n = t.size();
  std::vector<Index> inverse(n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (t[a][b] == e) inverse[a] = b;

  // Classes in order of their smallest member; the identity class is first
  // only if e is the smallest index, so order explicitly.
  std::vector<int> class_of(n, -1);
  std::vector<std::vector<Index>> classes;
  auto add_class = [&](Index a) {
    std::set<Index> members;
    for (Index g = 0; g < n; ++g) members.insert(t[t[g][a]][inverse[g]]);
    for (Index m : members) class_of[m] = static_cast<int>(classes.size());
    classes.emplace_back(members.begin(), members.end());
  };
  add_class(e);
  for (Index a = 0; a < n; ++a)
    if (class_of[a] < 0) add_class(a);

  const std::size_t k = classes.size();
  std::vector<double> table(k * k * k, 0.0);
  for (Index c = 0; c < k; ++c)
    for (Index d = 0; d < k; ++d) {
      const double scale = 1.0 / static_cast<double>(classes[c].size() * classes[d].size());
      for (Index a : classes[c])
        for (Index b : classes[d]) table[(c * k + d) * k + static_cast<Index>(class_of[t[a][b]])] += scale;
    }

  std::vector<Index> inv(k);
  std::vector<std::string> labels(k);
  std::map<std::size_t, int> seen_orders;
  for (Index c = 0; c < k; ++c) {
    const Index rep = classes[c].front();
    inv[c] = static_cast<Index>(class_of[inverse[rep]]);
    std::size_t ord = 1;
    for (Index p = rep; p != e; p = t[p][rep]) ++ord;
    if (c == 0) {
      labels[c] = "e";
      continue;
    }
    const int dup = seen_orders[ord]++;
    labels[c] = "C" + std::to_string(ord) + (dup ? "." + std::to_string(dup) : "");
  }
  return Hypergroup("classes(G" + std::to_string(n) + ")", std::move(labels), 0, std::move(inv), std::move(table));
}

std::vector<std::vector<Index>> symmetric_group_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::size_t>, Index> index;
  for (Index i = 0; i < perms.size(); ++i) index[perms[i]] = i;

  std::vector<std::vector<Index>> t(perms.size(), std::vector<Index>(perms.size()));
  std::vector<std::size_t> comp(n);
  for (Index a = 0; a < perms.size(); ++a)
    for (Index b = 0; b < perms.size(); ++b) {
      for (std::size_t i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
      t[a][b] = index.at(comp);
    }
  return t;
}

namespace {

void require_valid(const Hypergroup& h, const char* role, double tol) {
  const AxiomReport r = validate(h, tol);
  for (const auto& c : r.checks)
    if (!c.pass)
      throw ArgumentError(std::string("join: ") + role + " part '" + h.name() + "' fails the " +
                          axiom_name(c.axiom) + " axiom");
}

}  // namespace

Hypergroup join(const Hypergroup& compact, const Hypergroup& discrete, double tol) {
  require_valid(compact, "compact", tol);
  require_valid(discrete, "discrete", tol);
  const Measure haar = haar_measure(compact, tol);

  const std::size_t kc = compact.order();
  const std::size_t kd = discrete.order();
  const Index od = discrete.identity();
  const std::size_t k = kc + kd - 1;

  std::vector<Index> map_d(kd, 0);
  std::vector<std::string> labels(compact.elements());
  std::set<std::string> used(labels.begin(), labels.end());
  for (Index d = 0, next = kc; d < kd; ++d) {
    if (d == od) continue;
    map_d[d] = next++;
    std::string label = discrete.elements()[d];
    while (used.count(label)) label += '\'';
    used.insert(label);
    labels.push_back(label);
  }

  std::vector<double> table(k * k * k, 0.0);
  auto at = [&](Index x, Index y, Index z) -> double& { return table[(x * k + y) * k + z]; };
  for (Index x = 0; x < kc; ++x)
    for (Index y = 0; y < kc; ++y)
      for (Index z = 0; z < kc; ++z) at(x, y, z) = compact.weight(x, y, z);
  for (Index d = 0; d < kd; ++d) {
    if (d == od) continue;
    for (Index c = 0; c < kc; ++c) {
      at(c, map_d[d], map_d[d]) = 1.0;
      at(map_d[d], c, map_d[d]) = 1.0;
    }
    for (Index e = 0; e < kd; ++e) {
      if (e == od) continue;
      for (Index z = 0; z < kd; ++z) {
        const double w = discrete.weight(d, e, z);
        if (w == 0.0) continue;
        if (z == od) {
          for (Index c = 0; c < kc; ++c) at(map_d[d], map_d[e], c) += w * haar[c].real();
        } else {
          at(map_d[d], map_d[e], map_d[z]) += w;
        }
      }
    }
  }

  std::vector<Index> inv(k);
  for (Index c = 0; c < kc; ++c) inv[c] = compact.inverse(c);
  for (Index d = 0; d < kd; ++d)
    if (d != od) inv[map_d[d]] = map_d[discrete.inverse(d)];

  std::vector<Index> part(kc);
  std::iota(part.begin(), part.end(), 0);
  return Hypergroup(compact.name() + "v" + discrete.name(), std::move(labels), compact.identity(), std::move(inv),
                    std::move(table))
      .with_compact_part(std::move(part));
}

Hypergroup direct_product(const Hypergroup& a, const Hypergroup& b) {
  const std::size_t ka = a.order(), kb = b.order(), k = ka * kb;
  std::vector<std::string> labels(k);
  std::vector<Index> inv(k);
  std::vector<double> table(k * k * k, 0.0);
  for (Index x1 = 0; x1 < ka; ++x1)
    for (Index x2 = 0; x2 < kb; ++x2) {
      const Index x = x1 * kb + x2;
      labels[x] = "(" + a.elements()[x1] + "," + b.elements()[x2] + ")";
      inv[x] = a.inverse(x1) * kb + b.inverse(x2);
      for (Index y1 = 0; y1 < ka; ++y1)
        for (Index y2 = 0; y2 < kb; ++y2) {
          const Index y = y1 * kb + y2;
          for (Index z1 = 0; z1 < ka; ++z1) {
            const double w1 = a.weight(x1, y1, z1);
            if (w1 == 0.0) continue;
            for (Index z2 = 0; z2 < kb; ++z2) table[(x * k + y) * k + z1 * kb + z2] = w1 * b.weight(x2, y2, z2);
          }
        }
    }
  return Hypergroup(a.name() + "x" + b.name(), std::move(labels), a.identity() * kb + b.identity(), std::move(inv),
                    std::move(table));
}

}  // namespace hgw
