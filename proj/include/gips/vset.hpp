#pragma once

#include <algorithm>
#include <vector>

namespace gips {

// Vertex sets are sorted ascending with unique elements throughout the
// library; these helpers assume (and preserve) that representation.
using VertexSet = std::vector<int>;

inline VertexSet vset_sorted(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool vset_contains(const VertexSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet vset_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet vset_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet vset_diff(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool vset_is_subset(const VertexSet& sub, const VertexSet& sup) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

}  // namespace gips
