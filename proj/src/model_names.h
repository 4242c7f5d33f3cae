#ifndef HDCARP_MODEL_NAMES_H
#define HDCARP_MODEL_NAMES_H

#include <string>

#include "hdcarp/milp.h"

namespace hdcarp::detail {

inline std::string edge_label(const TransformedGraph& tg, int e) {
  const int base = tg.num_base_arcs();
  const int na = static_cast<int>(tg.anchors.size());
  if (e < base) {
    return std::to_string(e);
  }
  if (e < base + na) {
    return "f" + std::to_string(tg.anchors[e - base]);
  }
  return "t" + std::to_string(tg.anchors[e - base - na]);
}

// Variable naming shared by emission, encoding and decoding.
struct Names {
  Variant variant;

  std::string x(int m, int h, int a) const {
    return variant == Variant::P ? "x_" + std::to_string(m) + "_" + std::to_string(a)
                                 : "x_" + std::to_string(m) + "_" + std::to_string(h) + "_" +
                                       std::to_string(a);
  }
  std::string y(int m, int h, const std::string& edge) const {
    return "y_" + std::to_string(m) + "_" + std::to_string(h) + "_" + edge;
  }
  std::string t(int m, int h) const { return "t_" + std::to_string(m) + "_" + std::to_string(h); }
  std::string r(int m, int k, int h) const {
    return variant == Variant::P ? "r_" + std::to_string(m) + "_" + std::to_string(k)
                                 : "r_" + std::to_string(m) + "_" + std::to_string(k) + "_" +
                                       std::to_string(h);
  }
  std::string T(int k) const { return "T_" + std::to_string(k); }

  // P only has x for arcs of the segment's own class.
  bool has_x(const Arc& a, int h) const { return variant == Variant::U || a.p == h; }
  bool has_r(int k, int h) const { return variant == Variant::U || k == h; }
};

}  // namespace hdcarp::detail

#endif
