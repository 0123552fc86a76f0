#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "halfloop/identities.hpp"
#include "halfloop/loop_table.hpp"
#include "halfloop/nuclei.hpp"
#include "halfloop/subloops.hpp"

namespace halfloop {

  namespace detail {
    // Isomorphism-invariant fingerprint of an element: its order (0 when
    // the loop is not power-associative), how many elements it commutes
    // with, how many square roots it has, and the order of its square.
    using Fingerprint = std::tuple<Index, Index, Index, Index>;

    inline std::vector<Fingerprint> fingerprints(LoopTable const& L) {
      Index const        n = L.order();
      std::vector<Index> ord(n, 0);
      if (is_power_associative(L)) {
        ord = element_orders(L);
      }
      std::vector<Index> roots(n, 0);
      for (Index y = 0; y < n; ++y) {
        ++roots[L.mul(y, y)];
      }
      std::vector<Fingerprint> out(n);
      for (Index x = 0; x < n; ++x) {
        Index commuting = 0;
        for (Index y = 0; y < n; ++y) {
          commuting += L.mul(x, y) == L.mul(y, x);
        }
        out[x] = {ord[x], commuting, roots[x], ord[L.mul(x, x)]};
      }
      return out;
    }

    // Greedy generating sequence: scan elements rarest-fingerprint first and
    // keep any element outside the subloop generated so far.
    inline std::vector<Index> generating_sequence(LoopTable const&                L,
                                                  std::vector<Fingerprint> const& fp) {
      Index const        n = L.order();
      std::vector<Index> order(n);
      std::iota(order.begin(), order.end(), Index{0});
      std::vector<std::size_t> freq(n);
      for (Index x = 0; x < n; ++x) {
        freq[x] = std::count(fp.begin(), fp.end(), fp[x]);
      }
      std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return std::tie(freq[a], std::get<0>(fp[b])) < std::tie(freq[b], std::get<0>(fp[a]));
      });
      std::vector<Index> gens;
      std::vector<Index> span{L.identity()};
      std::vector<bool>  in(n, false);
      in[L.identity()] = true;
      for (Index x : order) {
        if (in[x]) {
          continue;
        }
        gens.push_back(x);
        span = subloop_generated(L, gens);
        for (Index s : span) {
          in[s] = true;
        }
        if (span.size() == n) {
          break;
        }
      }
      return gens;
    }

    class IsoSearch {
     public:
      using Callback = std::function<bool(Perm const&)>;

      IsoSearch(LoopTable const& A, LoopTable const& B) : _A(A), _B(B) {}

      // Calls `cb` for each isomorphism A -> B until it returns false.
      void run(Callback const& cb) {
        Index const n = _A.order();
        if (n != _B.order()) {
          return;
        }
        _fpA = fingerprints(_A);
        _fpB = fingerprints(_B);
        {
          auto a = _fpA, b = _fpB;
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          if (a != b) {
            return;
          }
        }
        {
          auto na = nuclei(_A), nb = nuclei(_B);
          if (na.left.size() != nb.left.size() || na.middle.size() != nb.middle.size()
              || na.right.size() != nb.right.size()
              || na.commutant.size() != nb.commutant.size()) {
            return;
          }
        }
        _map.assign(n, kUnset);
        _inv.assign(n, kUnset);
        _mapped.clear();
        _gens = generating_sequence(_A, _fpA);
        _cb   = &cb;
        _stop = false;
        if (assign(_A.identity(), _B.identity())) {
          search(0);
        }
      }

     private:
      static constexpr Index kUnset = ~Index{0};

      bool assign(Index x, Index y) {
        if (_fpA[x] != _fpB[y]) {
          return false;
        }
        _map[x] = y;
        _inv[y] = x;
        _mapped.push_back(x);
        return true;
      }

      void undo_to(std::size_t mark) {
        while (_mapped.size() > mark) {
          Index x = _mapped.back();
          _mapped.pop_back();
          _inv[_map[x]] = kUnset;
          _map[x]       = kUnset;
        }
      }

      // Extends the map through every product of mapped elements.
      bool propagate(std::size_t from) {
        for (std::size_t i = from; i < _mapped.size(); ++i) {
          Index const x = _mapped[i];
          for (std::size_t j = 0; j <= i; ++j) {
            Index const y = _mapped[j];
            for (int side = 0; side < 2; ++side) {
              Index const p = side == 0 ? x : y;
              Index const q = side == 0 ? y : x;
              Index const z = _A.mul(p, q);
              Index const w = _B.mul(_map[p], _map[q]);
              if (_map[z] == kUnset) {
                if (_inv[w] != kUnset || !assign(z, w)) {
                  return false;
                }
              } else if (_map[z] != w) {
                return false;
              }
            }
          }
        }
        return true;
      }

      void search(std::size_t g) {
        if (_stop) {
          return;
        }
        if (g == _gens.size()) {
          if (_mapped.size() == _A.order() && verify()) {
            _stop = !(*_cb)(_map);
          }
          return;
        }
        Index const x = _gens[g];
        if (_map[x] != kUnset) {
          search(g + 1);
          return;
        }
        for (Index y = 0; y < _B.order() && !_stop; ++y) {
          if (_inv[y] != kUnset || _fpA[x] != _fpB[y]) {
            continue;
          }
          std::size_t const mark = _mapped.size();
          assign(x, y);
          if (propagate(mark)) {
            search(g + 1);
          }
          undo_to(mark);
        }
      }

      bool verify() const {
        for (Index x = 0; x < _A.order(); ++x) {
          for (Index y = 0; y < _A.order(); ++y) {
            if (_map[_A.mul(x, y)] != _B.mul(_map[x], _map[y])) {
              return false;
            }
          }
        }
        return true;
      }

      LoopTable const&         _A;
      LoopTable const&         _B;
      std::vector<Fingerprint> _fpA, _fpB;
      std::vector<Index>       _gens;
      std::vector<Index>       _map, _inv, _mapped;
      Callback const*          _cb   = nullptr;
      bool                     _stop = false;
    };
  }  // namespace detail

  // Some p with p(xy) = p(x)p(y) for all x, y, or nullopt when A and B are
  // not isomorphic. Images of a greedy generating sequence are chosen by
  // backtracking; everything else follows by propagation through products.
  inline std::optional<Perm> find_isomorphism(LoopTable const& A, LoopTable const& B) {
    std::optional<Perm> out;
    detail::IsoSearch(A, B).run([&](Perm const& p) {
      out = p;
      return false;
    });
    return out;
  }

  // Every isomorphism A -> B, in the order the search finds them.
  inline std::vector<Perm> all_isomorphisms(LoopTable const& A, LoopTable const& B) {
    std::vector<Perm> out;
    detail::IsoSearch(A, B).run([&](Perm const& p) {
      out.push_back(p);
      return true;
    });
    return out;
  }

  inline bool is_isomorphism(LoopTable const& A, LoopTable const& B, Perm const& p) {
    if (A.order() != B.order() || p.size() != A.order() || !is_permutation(p)) {
      return false;
    }
    for (Index x = 0; x < A.order(); ++x) {
      for (Index y = 0; y < A.order(); ++y) {
        if (p[A.mul(x, y)] != B.mul(p[x], p[y])) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace halfloop
