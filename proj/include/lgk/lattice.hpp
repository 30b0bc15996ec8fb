#ifndef LGK_LATTICE_HPP
#define LGK_LATTICE_HPP

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "lgk/types.hpp"

namespace lgk {

using Coord = std::array<int, 3>;

struct Site {
  Coord coords{0, 0, 0};

  friend bool operator==(const Site& a, const Site& b) {
    return a.coords == b.coords;
  }
  friend auto operator<=>(const Site& a, const Site& b) {
    return a.coords <=> b.coords;
  }
};

// Oriented nearest-neighbour edge.  Canonical orientation points along the
// positive axis, so target - source = +e_axis.
struct Link {
  Site source;
  Site target;
  int axis = 0;           // 0,1,2 for x,y,z
  std::size_t index = 0;  // position in the global enumeration
};

// Unit face traversed as a closed 4-step path.  sign +1 walks the link from
// source to target, -1 walks it backwards.
struct Plaquette {
  std::array<std::pair<std::size_t, int>, 4> steps;  // (link index, sign)
  int axis_a = 0;  // in-plane axes, axis_a < axis_b
  int axis_b = 1;
  Site corner;
};

// Closed axis-aligned box of integer points, lo <= hi componentwise.
struct Region {
  Coord lo{0, 0, 0};
  Coord hi{0, 0, 0};

  Region() = default;
  Region(Coord lo_, Coord hi_);
  bool contains(const Site& s) const;
};

bool is_subregion(const Region& a, const Region& b);

class LatticeGraph {
 public:
  explicit LatticeGraph(const Region& region);

  const Region& region() const { return region_; }
  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  std::size_t site_index(const Site& s) const;  // throws if absent
  bool has_site(const Site& s) const;

  // Links with source x (outgoing) and with target x (incoming).
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> links_at(
      const Site& x) const;

 private:
  Region region_;
  std::vector<Site> sites_;
  std::vector<Link> links_;
  std::vector<Plaquette> plaquettes_;
};

LatticeGraph build_lattice(const Region& region);

// Lattice envelope of `region` inside `graph`: all sites incident to a link
// that meets the region.  A link (closed unit segment) meets a closed box
// exactly when one of its endpoints lies in the box.
std::set<std::size_t> envelope(const LatticeGraph& graph, const Region& region);

// Links meeting the region, by index.
std::vector<std::size_t> links_meeting(const LatticeGraph& graph,
                                       const Region& region);

}  // namespace lgk

#endif
