#include "hgw/catalog.hpp"

#include "hgw/errors.hpp"

namespace hgw::catalog {

namespace {

Hypergroup s3_classes() { return conjugacy_class_hypergroup(symmetric_group_table(3)).with_name("S3_classes"); }

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> list = [] {
    std::vector<std::string> n;
    for (int i = 1; i <= 12; ++i) n.push_back("Z" + std::to_string(i));
    n.insert(n.end(), {"Z2xZ2", "D_0.25", "D_0.5", "D_1", "S3_classes", "D_0.5vZ2", "D_0.5vZ3", "D_0.25vZ3",
                       "D_0.5xZ2", "D_0.25xS3_classes"});
    return n;
  }();
  return list;
}

Hypergroup make(const std::string& name) {
  if (name.size() > 1 && name.size() < 4 && name[0] == 'Z' &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t n = std::stoul(name.substr(1));
    if (n >= 1 && n <= 12 && name == "Z" + std::to_string(n)) return from_abelian_group({n}).with_name(name);
  }
  if (name == "Z2xZ2") return from_abelian_group({2, 2}).with_name(name);
  if (name == "D_0.25") return two_point(0.25).with_name(name);
  if (name == "D_0.5") return two_point(0.5).with_name(name);
  if (name == "D_1") return two_point(1.0).with_name(name);
  if (name == "S3_classes") return s3_classes();
  if (name == "D_0.5vZ2") return join(two_point(0.5), from_abelian_group({2})).with_name(name);
  if (name == "D_0.5vZ3") return join(two_point(0.5), from_abelian_group({3})).with_name(name);
  if (name == "D_0.25vZ3") return join(two_point(0.25), from_abelian_group({3})).with_name(name);
  if (name == "D_0.5xZ2") return direct_product(two_point(0.5), from_abelian_group({2})).with_name(name);
  if (name == "D_0.25xS3_classes") return direct_product(two_point(0.25), s3_classes()).with_name(name);
  throw ArgumentError("unknown catalog hypergroup '" + name + "'");
}

std::vector<Hypergroup> all() {
  std::vector<Hypergroup> out;
  for (const auto& n : names()) out.push_back(make(n));
  return out;
}

}  // namespace hgw::catalog
