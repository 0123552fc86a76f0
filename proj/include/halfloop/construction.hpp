#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "halfloop/abelian.hpp"
#include "halfloop/identities.hpp"
#include "halfloop/loop_table.hpp"

namespace halfloop {

  // The Klein group {1, a, b, c} coded in two bits (l, s) = (code & 1,
  // code >> 1), so multiplication is XOR: 1 = 00, a = 01, b = 10, c = 11.
  enum class Klein : std::uint8_t { one = 0, a = 1, b = 2, c = 3 };

  inline constexpr Klein klein_mul(Klein A, Klein B) noexcept {
    return static_cast<Klein>(static_cast<std::uint8_t>(A) ^ static_cast<std::uint8_t>(B));
  }

  inline constexpr std::array<Klein, 4> kKlein{Klein::one, Klein::a, Klein::b, Klein::c};

  inline char klein_name(Klein A) noexcept {
    return "1abc"[static_cast<int>(A)];
  }

  // An element (A, x) of L_M = K x M; its table index is code(A) * |M| + x,
  // which makes (1, 0) index 0.
  struct LMElement {
    Klein k = Klein::one;
    Index m = 0;

    friend bool operator==(LMElement const&, LMElement const&) = default;
  };

  struct ConstructionBundle {
    AbelianGroup       m;
    LoopTable          table;
    std::vector<Index> klein_subloop;  // (K, 1)
    std::vector<Index> m_subgroup;     // (1, M)

    Index m_order() const noexcept {
      return m.order();
    }

    Index index_of(LMElement e) const noexcept {
      return static_cast<Index>(e.k) * m.order() + e.m;
    }

    Index index_of(Klein A, Index x) const noexcept {
      return index_of(LMElement{A, x});
    }

    LMElement element(Index i) const noexcept {
      return LMElement{static_cast<Klein>(i / m.order()), i % m.order()};
    }

    Klein klein_part(Index i) const noexcept {
      return static_cast<Klein>(i / m.order());
    }

    Index m_part(Index i) const noexcept {
      return i % m.order();
    }

    // exponent(M) <= 2: L_M is then an elementary abelian 2-group and the
    // half-automorphism description does not apply.
    bool degenerate() const noexcept {
      return m.spec.exponent() <= 2;
    }

    std::string label(Index i) const {
      auto const e = element(i);
      return std::string("(") + klein_name(e.k) + "," + std::to_string(e.m) + ")";
    }
  };

  // L_M with
  //   (1,x)(1,y) = (1, x+y)      (A,x)(1,y) = (A, x+y)
  //   (1,x)(B,y) = (B, -x+y)     (A,x)(B,y) = (AB, -x+y)    for A, B != 1.
  // A degenerate M (exponent <= 2) is accepted; check degenerate() before
  // asking for half-automorphisms.
  inline ConstructionBundle build_lm(AbelianSpec const& spec) {
    AbelianGroup       M = abelian_group(spec);
    Index const        m = M.order(), n = 4 * m;
    std::vector<Index> cells(std::size_t(n) * n);
    for (Index i = 0; i < n; ++i) {
      Klein const A = static_cast<Klein>(i / m);
      Index const x = i % m;
      for (Index j = 0; j < n; ++j) {
        Klein const B = static_cast<Klein>(j / m);
        Index const y = j % m;
        Index const z = B == Klein::one ? M.add(x, y) : M.sub(y, x);
        cells[i * n + j] = static_cast<Index>(klein_mul(A, B)) * m + z;
      }
    }
    ConstructionBundle b{std::move(M), LoopTable::from_flat(n, std::move(cells)), {}, {}};
    for (Klein A : kKlein) {
      b.klein_subloop.push_back(b.index_of(A, 0));
    }
    for (Index x = 0; x < m; ++x) {
      b.m_subgroup.push_back(x);
    }
    return b;
  }

  // i lies in (1, M)
  inline bool in_m_subgroup(ConstructionBundle const& b, Index i) noexcept {
    return b.klein_part(i) == Klein::one;
  }

  ////////////////////////////////////////////////////////////////////////
  // The transversal route: G = Z2 x Z2 x D(M), H = 0 x 0 x {1, r} and the
  // right transversal
  //   B = {(0,0,x)} u {(l,s,rx) : (l,s) != (0,0)}
  // carry the product x . y = z where xy = hz for some h in H.
  ////////////////////////////////////////////////////////////////////////

  struct TransversalLoop {
    AbelianGroup       m;
    LoopTable          group;       // G
    TupleCoder         coder;       // G index <-> (l, s, d), d indexing D(M)
    std::vector<Index> subgroup;    // H, as G indices
    std::vector<Index> transversal; // B, as G indices, sorted
    LoopTable          loop;        // (B, .), position i is transversal[i]

    // Position in `transversal` of a G index, or transversal.size().
    Index position_of(Index g) const {
      auto it = std::lower_bound(transversal.begin(), transversal.end(), g);
      if (it == transversal.end() || *it != g) {
        return static_cast<Index>(transversal.size());
      }
      return static_cast<Index>(it - transversal.begin());
    }

    // G index of r x = (-x) r inside the factor D(M)
    Index dihedral_rx(Index x) const noexcept {
      return m.order() + m.neg(x);
    }
  };

  // Twisted subgroup: contains 1 and is closed under inverses and under
  // (x, y) -> xyx. Throws NotAGroup unless G is associative.
  inline bool is_twisted_subgroup(LoopTable const& G, std::span<Index const> B) {
    if (!is_associative(G)) {
      throw Error(errc::not_a_group, "twisted subgroups live in groups; the table is not associative");
    }
    std::vector<bool> in(G.order(), false);
    for (Index x : B) {
      in[x] = true;
    }
    if (!in[G.identity()]) {
      return false;
    }
    for (Index x : B) {
      if (!in[G.left_div(x, G.identity())]) {
        return false;
      }
      for (Index y : B) {
        if (!in[G.mul(G.mul(x, y), x)]) {
          return false;
        }
      }
    }
    return true;
  }

  // Builds (B, .) from the coset decomposition in G. Throws
  // TransversalBroken if some product XY has no or several decompositions
  // hZ with h in H and Z in B.
  inline TransversalLoop build_transversal_loop(AbelianSpec const& spec) {
    AbelianGroup M     = abelian_group(spec);
    Index const  m     = M.order();
    AbelianGroup Z2    = abelian_group(AbelianSpec({2}));
    auto         prod  = direct_product({Z2.table, Z2.table, generalized_dihedral(spec)});
    // loop is a placeholder until the quotient table is filled in
    TransversalLoop T{std::move(M), prod.table, std::move(prod.coder), {}, {}, prod.table};
    T.subgroup = {T.coder.encode({0, 0, 0}), T.coder.encode({0, 0, m})};
    for (Index x = 0; x < m; ++x) {
      T.transversal.push_back(T.coder.encode({0, 0, x}));
      for (Index ls = 1; ls < 4; ++ls) {
        T.transversal.push_back(T.coder.encode({ls & 1u, ls >> 1, T.dihedral_rx(x)}));
      }
    }
    std::sort(T.transversal.begin(), T.transversal.end());
    Index const        n = static_cast<Index>(T.transversal.size());
    std::vector<Index> cells(std::size_t(n) * n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        Index const P     = T.group.mul(T.transversal[i], T.transversal[j]);
        int         found = 0;
        for (Index h : T.subgroup) {
          Index const pos = T.position_of(T.group.left_div(h, P));
          if (pos < n) {
            cells[i * n + j] = pos;
            ++found;
          }
        }
        if (found != 1) {
          throw Error(errc::transversal_broken,
                      "product of transversal positions " + std::to_string(i) + " and "
                          + std::to_string(j) + " has " + std::to_string(found)
                          + " decompositions hZ");
        }
      }
    }
    T.loop = LoopTable::from_flat(n, std::move(cells));
    return T;
  }

  // psi: (1, x) -> (0,0,x) and (A, x) -> (l,s,rx) for A = (l,s) != 1, as a
  // map from L_M indices to positions in the transversal loop.
  inline Perm psi_map(ConstructionBundle const& b, TransversalLoop const& T) {
    Perm p(b.table.order());
    for (Index i = 0; i < b.table.order(); ++i) {
      auto const  e  = b.element(i);
      Index const ls = static_cast<Index>(e.k);
      Index const d  = e.k == Klein::one ? e.m : T.dihedral_rx(e.m);
      p[i]           = T.position_of(T.coder.encode({ls & 1u, ls >> 1, d}));
    }
    return p;
  }

  // Builds L_M both ways and checks psi on every pair.
  inline bool psi_check(AbelianSpec const& spec) {
    auto const b = build_lm(spec);
    auto const T = build_transversal_loop(spec);
    Perm const p = psi_map(b, T);
    if (!is_permutation(p)) {
      return false;
    }
    Index const n = b.table.order();
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        if (p[b.table.mul(x, y)] != T.loop.mul(p[x], p[y])) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace halfloop
