#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifslab/map.hpp"
#include "ifslab/point_set.hpp"

namespace ifslab {

/// A finite, nonempty family of maps on one space, optionally paired with a
/// candidate attractor.
class IfsSystem {
 public:
  IfsSystem(Space space, std::vector<Map> maps, std::optional<CompactSet> target = std::nullopt);

  const Space& space() const { return space_; }
  const std::vector<Map>& maps() const { return maps_; }
  std::size_t size() const { return maps_.size(); }
  const Map& operator[](std::size_t i) const { return maps_.at(i); }
  const std::optional<CompactSet>& target() const { return target_; }

  IfsSystem with_target(CompactSet target) const;
  IfsSystem with_map(Map map) const;
  /// Same family with maps_[i] moved to the front.
  IfsSystem with_first(std::size_t i) const;
  std::string label() const;

 private:
  Space space_;
  std::vector<Map> maps_;
  std::optional<CompactSet> target_;
};

}  // namespace ifslab
