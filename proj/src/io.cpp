#include "hgw/io.hpp"

#include "hgw/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace hgw::io {

namespace {

double parse_decimal(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw StructuralError("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw StructuralError("not a number: '" + s + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double weight_of(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_weight(j.get<std::string>());
  throw StructuralError("weight must be a string or a number");
}

std::size_t index_of(const Json& j, std::size_t k, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw StructuralError(std::string(what) + " must be a nonnegative integer");
  const auto v = j.get<std::size_t>();
  if (v >= k) throw StructuralError(std::string(what) + " out of range");
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw StructuralError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

double parse_weight(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const double p = parse_decimal(trim(text.substr(0, slash)));
  const double q = parse_decimal(trim(text.substr(slash + 1)));
  if (q == 0.0) throw StructuralError("zero denominator in '" + std::string(text) + "'");
  return p / q;
}

std::string format_weight(double w) {
  if (w == 0.0) return "0";
  const double a = std::abs(w);
  // Continued-fraction convergents of |w|.
  double p0 = 0, q0 = 1, p1 = 1, q1 = 0, x = a;
  for (int i = 0; i < 64; ++i) {
    const double ai = std::floor(x);
    const double p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > 1e6) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::abs(p1 / q1 - a) <= 1e-15 * std::max(1.0, a)) {
      std::ostringstream s;
      s << (w < 0 ? "-" : "") << static_cast<long long>(p1);
      if (q1 != 1.0) s << '/' << static_cast<long long>(q1);
      return s.str();
    }
    const double frac = x - ai;
    if (frac <= 0.0) break;
    x = 1.0 / frac;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

Json to_json(const Hypergroup& h) {
  const std::size_t k = h.order();
  Json j;
  j["name"] = h.name();
  j["elements"] = h.elements();
  j["identity"] = h.identity();
  j["involution"] = h.involution();
  Json table = Json::array();
  for (Index x = 0; x < k; ++x) {
    Json row = Json::array();
    for (Index y = 0; y < k; ++y) {
      Json cell = Json::array();
      for (Index z = 0; z < k; ++z)
        if (const double w = h.weight(x, y, z); w != 0.0) cell.push_back(Json::array({z, format_weight(w)}));
      row.push_back(std::move(cell));
    }
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  if (!h.compact_part().empty()) j["compact_part"] = h.compact_part();
  return j;
}

Hypergroup hypergroup_from_json(const Json& j) {
  try {
    const std::string name = field(j, "name").get<std::string>();
    const auto elements = field(j, "elements").get<std::vector<std::string>>();
    const std::size_t k = elements.size();
    if (k == 0) throw StructuralError("no elements");
    if (std::set<std::string>(elements.begin(), elements.end()).size() != k)
      throw StructuralError("element labels are not unique");
    const Index identity = index_of(field(j, "identity"), k, "identity");
    const Json& inv_j = field(j, "involution");
    if (!inv_j.is_array() || inv_j.size() != k) throw StructuralError("involution must have one entry per element");
    std::vector<Index> inv;
    for (const auto& v : inv_j) inv.push_back(index_of(v, k, "involution entry"));

    const Json& t = field(j, "table");
    if (!t.is_array() || t.size() != k) throw StructuralError("table must have k rows");
    std::vector<double> table(k * k * k, 0.0);
    for (Index x = 0; x < k; ++x) {
      if (!t[x].is_array() || t[x].size() != k) throw StructuralError("table row " + std::to_string(x) + " must have k cells");
      for (Index y = 0; y < k; ++y) {
        const Json& cell = t[x][y];
        if (!cell.is_array()) throw StructuralError("table cell must be an array");
        std::set<Index> seen;
        for (const auto& e : cell) {
          if (!e.is_array() || e.size() != 2) throw StructuralError("table entry must be [index, weight]");
          const Index z = index_of(e[0], k, "table index");
          if (!seen.insert(z).second) throw StructuralError("duplicate index in table cell");
          table[(x * k + y) * k + z] = weight_of(e[1]);
        }
      }
    }
    Hypergroup h(name, elements, identity, std::move(inv), std::move(table));
    if (j.contains("compact_part")) {
      std::vector<Index> part;
      for (const auto& v : j.at("compact_part")) part.push_back(index_of(v, k, "compact_part entry"));
      h = h.with_compact_part(std::move(part));
    }
    return h;
  } catch (const Json::exception& e) {
    throw StructuralError(std::string("hypergroup file: ") + e.what());
  }
}

Json to_json(const Func& f) {
  Json a = Json::array();
  for (Index i = 0; i < f.size(); ++i) a.push_back(Json::array({f[i].real(), f[i].imag()}));
  return a;
}

Func func_from_json(const Json& j, std::size_t expected_size) {
  if (!j.is_array()) throw StructuralError("function must be an array");
  if (j.size() != expected_size)
    throw StructuralError("function has " + std::to_string(j.size()) + " values, expected " +
                          std::to_string(expected_size));
  Func f = Func::zero(expected_size);
  for (Index i = 0; i < expected_size; ++i) {
    const Json& v = j[i];
    if (v.is_array()) {
      if (v.size() != 2) throw StructuralError("complex value must be [re, im]");
      f[i] = Complex(weight_of(v[0]), weight_of(v[1]));
    } else {
      f[i] = weight_of(v);
    }
  }
  return f;
}

Json to_json(const MomentSequence& seq) {
  Json j;
  j["rank"] = seq.rank;
  j["order"] = seq.order;
  Json entries = Json::array();
  for (const auto& [alpha, phi] : seq.entries) {
    Json e;
    e["alpha"] = alpha.entries();
    e["values"] = to_json(phi);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

MomentSequence sequence_from_json(const Json& j, std::size_t expected_size) {
  try {
    MomentSequence seq;
    seq.rank = field(j, "rank").get<std::size_t>();
    seq.order = field(j, "order").get<unsigned>();
    if (seq.rank == 0) throw StructuralError("rank must be positive");
    for (const auto& e : field(j, "entries")) {
      const MultiIndex alpha(field(e, "alpha").get<std::vector<unsigned>>());
      if (alpha.rank() != seq.rank) throw StructuralError("multi-index " + alpha.str() + " has the wrong rank");
      if (!seq.entries.emplace(alpha, func_from_json(field(e, "values"), expected_size)).second)
        throw StructuralError("duplicate multi-index " + alpha.str());
    }
    if (!seq.downward_closed()) throw StructuralError("moment sequence index set is not downward closed");
    return seq;
  } catch (const Json::exception& e) {
    throw StructuralError(std::string("moment sequence: ") + e.what());
  }
}

Json to_json(const DerivationFamily& fam, Strength strength) {
  Json j = to_json(sequence_from_family(fam));
  j["strength"] = strength_name(strength);
  return j;
}

std::pair<DerivationFamily, Strength> family_from_json(const Json& j, std::size_t expected_size) {
  Strength s = Strength::Scalar;
  if (j.is_object() && j.contains("strength")) {
    const Json& tag = j.at("strength");
    if (tag == "scalar") s = Strength::Scalar;
    else if (tag == "measure") s = Strength::Measure;
    else throw StructuralError("strength must be \"scalar\" or \"measure\"");
  }
  return {family_from_sequence(sequence_from_json(j, expected_size)), s};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << text;
  if (!out) throw StructuralError("write failed for " + path.string());
}

Hypergroup load_hypergroup(const std::filesystem::path& path) { return hypergroup_from_json(read_json(path)); }

void save_hypergroup(const Hypergroup& h, const std::filesystem::path& path) {
  write_text(path, to_json(h).dump(2) + "\n");
}

std::string content_hash(const Hypergroup& h) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : to_json(h).dump()) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace hgw::io
