#ifndef OPQ_CATALOG_HPP
#define OPQ_CATALOG_HPP

#include <string>
#include <vector>

#include "opq/family.hpp"

namespace opq {

class Catalog {
 public:
  static const Catalog& instance();

  const std::vector<FamilySpec>& families() const { return specs_; }
  const FamilySpec& spec(const std::string& id) const;  // throws on unknown id
  bool has(const std::string& id) const;

 private:
  Catalog();
  std::vector<FamilySpec> specs_;
};

ParameterVector validate_parameters(const std::string& id, const Params& p,
                                    std::optional<int> N);

BoundFamily get_family(const std::string& id, const Params& p,
                       std::optional<int> N);

// binding at lambda + delta; throws when the shift leaves the valid range
BoundFamily shifted_family(const BoundFamily& f);

std::vector<GridPoint> default_grid(const std::string& id);

}  // namespace opq

#endif
