#pragma once

#include <array>
#include <optional>
#include <vector>

#include "halfloop/loop_table.hpp"

namespace halfloop {

  using Triple = std::array<Index, 3>;

  struct IdentityCheck {
    bool                  holds = true;
    std::optional<Triple> witness;  // lexicographically least failure
  };

  // Flags for the identities scanned by check_identities. For the pair
  // identities the third witness slot repeats the second argument; for
  // power associativity the witness is (x, k, k) where k is the least
  // exponent at which x^k bracketed to the left and to the right differ.
  struct IdentityReport {
    IdentityCheck right_bol;   // x((yz)y) = ((xy)z)y
    IdentityCheck left_bol;    // (x(yx))z = x(y(xz))
    IdentityCheck moufang;     // right and left Bol
    IdentityCheck associative;
    IdentityCheck commutative;
    IdentityCheck power_associative;
    IdentityCheck flexible;    // x(yx) = (xy)x
  };

  namespace detail {
    // Left-normed x^k = x^(k-1) x and right-normed x^k = x x^(k-1) for
    // k = 1..n; returns the first k where they differ.
    inline std::optional<Index> power_mismatch(LoopTable const& L, Index x) {
      Index left = x, right = x;
      for (Index k = 2; k <= L.order(); ++k) {
        left  = L.mul(left, x);
        right = L.mul(x, right);
        if (left != right) {
          return k;
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  inline IdentityReport check_identities(LoopTable const& L) {
    IdentityReport r;
    Index const    n = L.order();

    auto fail = [](IdentityCheck& c, Index x, Index y, Index z) {
      if (c.holds) {
        c.holds   = false;
        c.witness = Triple{x, y, z};
      }
    };

    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        Index const xy = L.mul(x, y);
        Index const yx = L.mul(y, x);
        if (xy != yx) {
          fail(r.commutative, x, y, y);
        }
        if (L.mul(x, yx) != L.mul(xy, x)) {
          fail(r.flexible, x, y, y);
        }
        for (Index z = 0; z < n; ++z) {
          Index const yz = L.mul(y, z);
          if (L.mul(xy, z) != L.mul(x, yz)) {
            fail(r.associative, x, y, z);
          }
          if (r.right_bol.holds
              && L.mul(x, L.mul(yz, y)) != L.mul(L.mul(xy, z), y)) {
            fail(r.right_bol, x, y, z);
          }
          if (r.left_bol.holds
              && L.mul(L.mul(x, yx), z) != L.mul(x, L.mul(y, L.mul(x, z)))) {
            fail(r.left_bol, x, y, z);
          }
        }
      }
    }
    for (Index x = 0; x < n && r.power_associative.holds; ++x) {
      if (auto k = detail::power_mismatch(L, x)) {
        fail(r.power_associative, x, *k, *k);
      }
    }
    if (!r.right_bol.holds) {
      r.moufang = r.right_bol;
    } else if (!r.left_bol.holds) {
      r.moufang = r.left_bol;
    }
    return r;
  }

  // Smallest k >= 1 with x^k = e. Throws NotPowerAssociative when the
  // two bracketings of some power of x disagree, or when the powers of x
  // never reach the identity.
  inline Index element_order(LoopTable const& L, Index x) {
    if (auto k = detail::power_mismatch(L, x)) {
      throw Error(errc::not_power_associative,
                  "element " + std::to_string(x) + ": left- and right-normed powers differ at exponent "
                      + std::to_string(*k));
    }
    Index p = x;
    for (Index k = 1; k <= L.order(); ++k) {
      if (p == L.identity()) {
        return k;
      }
      p = L.mul(p, x);
    }
    throw Error(errc::not_power_associative,
                "powers of element " + std::to_string(x) + " never reach the identity");
  }

  inline std::vector<Index> element_orders(LoopTable const& L) {
    std::vector<Index> out(L.order());
    for (Index x = 0; x < L.order(); ++x) {
      out[x] = element_order(L, x);
    }
    return out;
  }

  inline bool is_power_associative(LoopTable const& L) {
    for (Index x = 0; x < L.order(); ++x) {
      if (detail::power_mismatch(L, x)) {
        return false;
      }
    }
    return true;
  }

  inline bool is_associative(LoopTable const& L) {
    Index const n = L.order();
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        Index const xy = L.mul(x, y);
        for (Index z = 0; z < n; ++z) {
          if (L.mul(xy, z) != L.mul(x, L.mul(y, z))) {
            return false;
          }
        }
      }
    }
    return true;
  }

}  // namespace halfloop
