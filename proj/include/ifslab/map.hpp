#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/point_set.hpp"
#include "ifslab/region.hpp"
#include "ifslab/space.hpp"
#include "json.hpp"

namespace ifslab {

using Json = nlohmann::json;
using PointFn = std::function<Point(const Point&)>;

/// A piece of a map that is strictly monotone in a 1-D parameter.
///
/// `chart_eval` is the map written in the parameter; `to_point` and
/// `to_param` move between the parameter and the space. Preimages along the
/// branch are found by bisection on `chart_eval`.
struct MonotoneBranch {
  double lo = 0.0;
  double hi = 1.0;
  bool increasing = true;
  std::function<double(double)> chart_eval;
  std::function<Point(double)> to_point;
  std::function<double(const Point&)> to_param;

  bool contains_param(double t, double tol = 1e-12) const { return t >= lo - tol && t <= hi + tol; }
};

/// A continuous self-map of a space, with optional metadata.
///
/// Maps are values: evaluation is pure, copies share state, and `with_*`
/// returns a modified copy. Maps are compared only pointwise.
class Map {
 public:
  Map(Space space, PointFn eval, std::string label, Json descriptor = nullptr);

  Point operator()(const Point& p) const { return state_->eval(p); }

  const Space& space() const { return state_->space; }
  const std::string& label() const { return state_->label; }

  /// JSON descriptor {kind, params, children}; null for maps built from
  /// arbitrary callables.
  const Json& descriptor() const { return state_->descriptor; }
  bool serializable() const { return !state_->descriptor.is_null(); }

  /// Symbolic fixed set, when declared.
  const std::optional<std::vector<Region>>& fixed_set() const { return state_->fixed; }
  const std::vector<MonotoneBranch>& branches() const { return state_->branches; }
  const PointFn& inverse() const { return state_->inverse; }
  bool has_inverse() const { return static_cast<bool>(state_->inverse); }
  bool is_identity() const { return state_->identity; }

  /// Net of the declared fixed set. Throws when nothing is declared or a
  /// fixed region is unbounded.
  CompactSet fixed_net(double eps) const;

  Map with_fixed_set(std::vector<Region> fixed) const;
  Map with_branches(std::vector<MonotoneBranch> branches) const;
  Map with_inverse(PointFn inverse) const;
  Map with_space(Space space) const;
  Map with_label(std::string label) const;
  Map with_descriptor(Json descriptor) const;
  Map as_identity() const;

 private:
  struct State {
    Space space;
    PointFn eval;
    std::string label;
    Json descriptor;
    std::optional<std::vector<Region>> fixed;
    std::vector<MonotoneBranch> branches;
    PointFn inverse;
    bool identity = false;
  };
  explicit Map(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  template <typename Fn>
  Map modified(Fn&& fn) const {
    auto s = std::make_shared<State>(*state_);
    fn(*s);
    return Map(std::move(s));
  }

  std::shared_ptr<const State> state_;
};

/// A homeomorphism between two spaces with its inverse.
struct Homeomorphism {
  Space source;
  Space target;
  PointFn forward;
  PointFn inverse;
  std::string label;
  Json descriptor = nullptr;
};

Homeomorphism homeo_identity(const Space& space);
/// x -> scale * x + offset on the real line (scale != 0).
Homeomorphism homeo_affine(double scale, double offset);
/// t -> e^{i t} from [alpha, alpha + 2 pi) onto the circle.
Homeomorphism homeo_arc_chart(double alpha);

}  // namespace ifslab
