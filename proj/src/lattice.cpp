#include "lgk/lattice.hpp"

#include <algorithm>
#include <map>

namespace lgk {

Region::Region(Coord lo_, Coord hi_) : lo(lo_), hi(hi_) {
  for (int i = 0; i < 3; ++i)
    if (lo[i] > hi[i]) throw Error("Region: lo > hi");
}

bool Region::contains(const Site& s) const {
  for (int i = 0; i < 3; ++i)
    if (s.coords[i] < lo[i] || s.coords[i] > hi[i]) return false;
  return true;
}

bool is_subregion(const Region& a, const Region& b) {
  for (int i = 0; i < 3; ++i)
    if (a.lo[i] < b.lo[i] || a.hi[i] > b.hi[i]) return false;
  return true;
}

namespace {

Site shifted(const Site& s, int axis, int delta) {
  Site t = s;
  t.coords[axis] += delta;
  return t;
}

}  // namespace

LatticeGraph::LatticeGraph(const Region& region) : region_(region) {
  // Sites in lexicographic coordinate order.
  for (int x = region.lo[0]; x <= region.hi[0]; ++x)
    for (int y = region.lo[1]; y <= region.hi[1]; ++y)
      for (int z = region.lo[2]; z <= region.hi[2]; ++z)
        sites_.push_back(Site{{x, y, z}});

  // Links by source site, then axis x<y<z; open boundary.
  for (const Site& s : sites_) {
    for (int axis = 0; axis < 3; ++axis) {
      Site t = shifted(s, axis, +1);
      if (!region.contains(t)) continue;
      links_.push_back(Link{s, t, axis, links_.size()});
    }
  }

  std::map<std::pair<Coord, int>, std::size_t> link_lookup;
  for (const Link& l : links_)
    link_lookup[{l.source.coords, l.axis}] = l.index;

  // One plaquette per unit face, right-handed in the (a,b) plane with a<b.
  for (const Site& c : sites_) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        Site ca = shifted(c, a, +1);
        Site cb = shifted(c, b, +1);
        Site cab = shifted(ca, b, +1);
        if (!region.contains(cab)) continue;
        Plaquette p;
        p.corner = c;
        p.axis_a = a;
        p.axis_b = b;
        p.steps = {{{link_lookup.at({c.coords, a}), +1},
                    {link_lookup.at({ca.coords, b}), +1},
                    {link_lookup.at({cb.coords, a}), -1},
                    {link_lookup.at({c.coords, b}), -1}}};
        plaquettes_.push_back(p);
      }
    }
  }
}

std::size_t LatticeGraph::site_index(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || !(*it == s))
    throw Error("LatticeGraph: site not in graph");
  return static_cast<std::size_t>(it - sites_.begin());
}

bool LatticeGraph::has_site(const Site& s) const {
  return region_.contains(s);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
LatticeGraph::links_at(const Site& x) const {
  if (!has_site(x)) throw Error("links_at: site not in graph");
  std::vector<std::size_t> outgoing, incoming;
  for (const Link& l : links_) {
    if (l.source == x) outgoing.push_back(l.index);
    if (l.target == x) incoming.push_back(l.index);
  }
  return {outgoing, incoming};
}

LatticeGraph build_lattice(const Region& region) {
  return LatticeGraph(region);
}

std::vector<std::size_t> links_meeting(const LatticeGraph& graph,
                                       const Region& region) {
  if (!is_subregion(region, graph.region()))
    throw NestingError("links_meeting: region not contained in graph region");
  std::vector<std::size_t> out;
  for (const Link& l : graph.links())
    if (region.contains(l.source) || region.contains(l.target))
      out.push_back(l.index);
  return out;
}

std::set<std::size_t> envelope(const LatticeGraph& graph, const Region& region) {
  std::set<std::size_t> out;
  for (std::size_t li : links_meeting(graph, region)) {
    const Link& l = graph.links()[li];
    out.insert(graph.site_index(l.source));
    out.insert(graph.site_index(l.target));
  }
  return out;
}

}  // namespace lgk
