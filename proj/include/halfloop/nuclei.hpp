#pragma once

#include <algorithm>
#include <iterator>
#include <vector>

#include "halfloop/loop_table.hpp"

namespace halfloop {

  // All sets are sorted element indices.
  struct NucleiReport {
    std::vector<Index> left;       // a with (ax)y = a(xy)
    std::vector<Index> middle;     // a with (xa)y = x(ay)
    std::vector<Index> right;      // a with (xy)a = x(ya)
    std::vector<Index> nucleus;    // left & middle & right
    std::vector<Index> commutant;  // a with ax = xa
    std::vector<Index> center;     // commutant & nucleus
  };

  namespace detail {
    inline std::vector<Index> set_intersection(std::vector<Index> const& a,
                                               std::vector<Index> const& b) {
      std::vector<Index> out;
      std::set_intersection(
          a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }
  }  // namespace detail

  inline NucleiReport nuclei(LoopTable const& L) {
    Index const  n = L.order();
    NucleiReport r;
    for (Index a = 0; a < n; ++a) {
      bool in_left = true, in_middle = true, in_right = true, commutes = true;
      for (Index x = 0; x < n; ++x) {
        if (L.mul(a, x) != L.mul(x, a)) {
          commutes = false;
        }
        for (Index y = 0; y < n && (in_left || in_middle || in_right); ++y) {
          if (in_left && L.mul(L.mul(a, x), y) != L.mul(a, L.mul(x, y))) {
            in_left = false;
          }
          if (in_middle && L.mul(L.mul(x, a), y) != L.mul(x, L.mul(a, y))) {
            in_middle = false;
          }
          if (in_right && L.mul(L.mul(x, y), a) != L.mul(x, L.mul(y, a))) {
            in_right = false;
          }
        }
      }
      if (in_left) {
        r.left.push_back(a);
      }
      if (in_middle) {
        r.middle.push_back(a);
      }
      if (in_right) {
        r.right.push_back(a);
      }
      if (commutes) {
        r.commutant.push_back(a);
      }
    }
    r.nucleus = detail::set_intersection(detail::set_intersection(r.left, r.middle), r.right);
    r.center  = detail::set_intersection(r.commutant, r.nucleus);
    return r;
  }

}  // namespace halfloop
