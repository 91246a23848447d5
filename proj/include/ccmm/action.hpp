#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ccmm/group.hpp"

namespace ccmm {

/// A left action of a finite group on the points 0..points-1.
class GroupAction {
 public:
  using ActFn = std::function<Point(Element, Point)>;

  GroupAction(FiniteGroup group, std::uint32_t points, ActFn act, std::string name);

  const FiniteGroup& group() const { return group_; }
  std::uint32_t points() const { return points_; }
  Point act(Element g, Point x) const { return act_(g, x); }
  const std::string& name() const { return name_; }

 private:
  FiniteGroup group_;
  std::uint32_t points_;
  ActFn act_;
  std::string name_;
};

/// Exhaustive check of the identity and compatibility laws. Returns
/// `unchecked` when |G|^2 * points exceeds `cap`.
GroupReport verify_action(const GroupAction& action, std::uint64_t cap = 200'000'000);

/// k . x = kx. Its diagonal orbits are exactly the classes of the group scheme.
GroupAction left_regular_action(const FiniteGroup& g);
/// k . x = x k^{-1}.
GroupAction right_regular_action(const FiniteGroup& g);
/// G x G on G by (x,y) . g = x g y^{-1}. The acting group is product(G, G).
GroupAction conjugation_action(const FiniteGroup& g);
/// S_n on {0..n-1}, or S_n x| H^n on H^n by (h, pi) . x = h + pi.x.
GroupAction natural_action(const FiniteGroup& g);
/// Z/n acting on (Z/n)^2 by s . (p, q) = (p + s, q + s); point (p, q) is p*n + q.
GroupAction diagonal_translation_action(std::uint32_t n);
/// The same action with `extra` additional points fixed by every element.
GroupAction with_fixed_points(const GroupAction& action, std::uint32_t extra);

/// "left-regular:<group>", "right-regular:<group>", "conjugation:<group>",
/// "natural:<group>", "diagonal:<n>", "fixed:<m>:<action>".
GroupAction parse_action(std::string_view spec);

/// Orbit labels on points, 0, 1, ... in order of each orbit's smallest point,
/// and the number of orbits on ordered pairs.
std::vector<std::uint32_t> point_orbits(const GroupAction& action);
std::uint64_t diagonal_orbit_count(const GroupAction& action);

}  // namespace ccmm
