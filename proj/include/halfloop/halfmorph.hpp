#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "halfloop/abelian.hpp"
#include "halfloop/construction.hpp"
#include "halfloop/identities.hpp"
#include "halfloop/loop_table.hpp"
#include "halfloop/perm.hpp"
#include "halfloop/subloops.hpp"

namespace halfloop {

  ////////////////////////////////////////////////////////////////////////
  // Classification of a single permutation
  ////////////////////////////////////////////////////////////////////////

  enum class HalfKind { automorphism, anti_automorphism, proper };

  inline std::string_view to_string(HalfKind k) noexcept {
    switch (k) {
      case HalfKind::automorphism:
        return "automorphism";
      case HalfKind::anti_automorphism:
        return "anti-automorphism";
      case HalfKind::proper:
        return "proper";
    }
    return "?";
  }

  // kind is empty when the permutation is not a half-automorphism; the
  // witness is then the first pair (x, y) with f(xy) outside
  // {f(x)f(y), f(y)f(x)}.
  struct Classification {
    std::optional<HalfKind>               kind;
    std::optional<std::pair<Index, Index>> witness;

    bool is_half() const noexcept {
      return kind.has_value();
    }
  };

  // A map that is both an automorphism and an anti-automorphism (any
  // automorphism of a commutative loop) is reported as an automorphism.
  inline Classification classify(LoopTable const& L, Perm const& f) {
    if (f.size() != L.order() || !is_permutation(f)) {
      throw Error(errc::invalid_argument, "classify expects a permutation of the loop's elements");
    }
    bool           hom = true, anti = true;
    Index const    n   = L.order();
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        Index const img = f[L.mul(x, y)];
        bool const  h   = img == L.mul(f[x], f[y]);
        bool const  a   = img == L.mul(f[y], f[x]);
        if (!h && !a) {
          return Classification{std::nullopt, std::make_pair(x, y)};
        }
        hom  = hom && h;
        anti = anti && a;
      }
    }
    if (hom) {
      return {HalfKind::automorphism, std::nullopt};
    }
    if (anti) {
      return {HalfKind::anti_automorphism, std::nullopt};
    }
    return {HalfKind::proper, std::nullopt};
  }

  ////////////////////////////////////////////////////////////////////////
  // Parameters of the closed-form maps F^{+/-}(f', f'', u, v)
  ////////////////////////////////////////////////////////////////////////

  enum class Sign : std::int8_t { minus = -1, plus = 1 };

  inline Sign operator*(Sign a, Sign b) noexcept {
    return a == b ? Sign::plus : Sign::minus;
  }

  inline char sign_char(Sign s) noexcept {
    return s == Sign::plus ? '+' : '-';
  }

  // Aut(K) = S3 acting on {a, b, c}, listed as
  //   I, (a b), (a c), (b c), (a b c), (a c b).
  // Entry [i][A] is the image of A under the i-th automorphism.
  inline constexpr std::array<std::array<Klein, 4>, 6> kKleinAuts{{
      {Klein::one, Klein::a, Klein::b, Klein::c},
      {Klein::one, Klein::b, Klein::a, Klein::c},
      {Klein::one, Klein::c, Klein::b, Klein::a},
      {Klein::one, Klein::a, Klein::c, Klein::b},
      {Klein::one, Klein::b, Klein::c, Klein::a},
      {Klein::one, Klein::c, Klein::a, Klein::b},
  }};

  inline constexpr std::array<std::string_view, 6> kKleinAutNames{
      "I", "(a b)", "(a c)", "(b c)", "(a b c)", "(a c b)"};

  inline Klein klein_apply(Index aut, Klein A) noexcept {
    return kKleinAuts[aut][static_cast<int>(A)];
  }

  // index of kKleinAuts[g] o kKleinAuts[f]
  inline Index klein_compose(Index g, Index f) noexcept {
    for (Index i = 0; i < kKleinAuts.size(); ++i) {
      bool same = true;
      for (Klein A : kKlein) {
        same = same && kKleinAuts[i][static_cast<int>(A)] == klein_apply(g, klein_apply(f, A));
      }
      if (same) {
        return i;
      }
    }
    return 0;  // unreachable: S3 is closed
  }

  struct HalfParams {
    Sign  sign      = Sign::plus;
    Index klein_aut = 0;  // f', index into kKleinAuts
    Perm  m_aut;          // f'', an automorphism of M as an image sequence
    Index u         = 0;  // alpha(a)
    Index v         = 0;  // alpha(b)

    friend bool operator==(HalfParams const&, HalfParams const&) = default;
    friend auto operator<=>(HalfParams const&, HalfParams const&) = default;
  };

  inline HalfParams identity_params(ConstructionBundle const& b, Sign sign = Sign::plus) {
    return HalfParams{sign, 0, identity_perm(b.m_order()), 0, 0};
  }

  // alpha_(u,v): K -> M with 1 -> 0, a -> u, b -> v, c -> u + v. Throws
  // NotInvolution unless 2u = 2v = 0.
  inline Index alpha(AbelianGroup const& M, Index u, Index v, Klein A) {
    if (M.add(u, u) != 0 || M.add(v, v) != 0) {
      throw Error(errc::not_involution,
                  "alpha needs elements of order <= 2, got " + std::to_string(u) + ", "
                      + std::to_string(v));
    }
    switch (A) {
      case Klein::one:
        return 0;
      case Klein::a:
        return u;
      case Klein::b:
        return v;
      case Klein::c:
        return M.add(u, v);
    }
    return 0;
  }

  inline void require_nondegenerate(ConstructionBundle const& b) {
    if (b.degenerate()) {
      throw Error(errc::degenerate_exponent,
                  "exponent(" + b.m.spec.name() + ") <= 2: L_M is an elementary abelian 2-group");
    }
  }

  //   F+(A, x) = (f'(A), f''(x) + alpha(A))
  //   F-(1, x) = (1, f''(x)),   F-(A, x) = (f'(A), f''(-x) + alpha(A)) for A != 1
  inline Perm closed_form(ConstructionBundle const& b, HalfParams const& p) {
    require_nondegenerate(b);
    AbelianGroup const& M = b.m;
    if (p.klein_aut >= kKleinAuts.size() || p.m_aut.size() != M.order()
        || !is_permutation(p.m_aut)) {
      throw Error(errc::invalid_argument, "malformed half-automorphism parameters");
    }
    Perm out(b.table.order());
    for (Klein A : kKlein) {
      Index const shift = alpha(M, p.u, p.v, A);
      Klein const img   = klein_apply(p.klein_aut, A);
      for (Index x = 0; x < M.order(); ++x) {
        Index const src = (p.sign == Sign::minus && A != Klein::one) ? M.neg(x) : x;
        out[b.index_of(A, x)] = b.index_of(img, M.add(p.m_aut[src], shift));
      }
    }
    return out;
  }

  // Reads the parameters back from a permutation: f'' from the (1, M)
  // block, f' and (u, v) from the images of (a, 0) and (b, 0), and the sign
  // from the image of (a, x) for some x of order > 2. Returns nullopt when
  // the permutation is not of closed form.
  inline std::optional<HalfParams> decode_params(ConstructionBundle const& b, Perm const& f) {
    require_nondegenerate(b);
    AbelianGroup const& M = b.m;
    if (f.size() != b.table.order()) {
      return std::nullopt;
    }
    HalfParams p;
    p.m_aut.resize(M.order());
    for (Index x = 0; x < M.order(); ++x) {
      if (b.klein_part(f[x]) != Klein::one) {
        return std::nullopt;
      }
      p.m_aut[x] = b.m_part(f[x]);
    }
    Index const fa = f[b.index_of(Klein::a, 0)];
    Index const fb = f[b.index_of(Klein::b, 0)];
    bool        found = false;
    for (Index i = 0; i < kKleinAuts.size(); ++i) {
      if (kKleinAuts[i][1] == b.klein_part(fa) && kKleinAuts[i][2] == b.klein_part(fb)) {
        p.klein_aut = i;
        found       = true;
      }
    }
    p.u = b.m_part(fa);
    p.v = b.m_part(fb);
    if (!found || M.add(p.u, p.u) != 0 || M.add(p.v, p.v) != 0) {
      return std::nullopt;
    }
    Index x = 0;
    while (x < M.order() && M.add(x, x) == 0) {
      ++x;
    }
    Index const expect_plus = b.index_of(klein_apply(p.klein_aut, Klein::a),
                                         M.add(p.m_aut[x], p.u));
    p.sign = f[b.index_of(Klein::a, x)] == expect_plus ? Sign::plus : Sign::minus;
    if (!is_permutation(p.m_aut) || closed_form(b, p) != f) {
      return std::nullopt;
    }
    return p;
  }

  // Parameters of F_g o F_f:
  //   sign = sign_g * sign_f,  f' = g' f',  f'' = g'' f'',
  //   (u, v) = (g''(u_f) + alpha_g(f'(a)), g''(v_f) + alpha_g(f'(b))).
  // The second summands are the pair (u', v') transformed by f', e.g.
  // (v', u') for f' = (a b).
  inline HalfParams compose_params(ConstructionBundle const& b,
                                   HalfParams const&         g,
                                   HalfParams const&         f) {
    AbelianGroup const& M = b.m;
    HalfParams          out;
    out.sign      = g.sign * f.sign;
    out.klein_aut = klein_compose(g.klein_aut, f.klein_aut);
    out.m_aut     = compose(g.m_aut, f.m_aut);
    out.u = M.add(g.m_aut[f.u], alpha(M, g.u, g.v, klein_apply(f.klein_aut, Klein::a)));
    out.v = M.add(g.m_aut[f.v], alpha(M, g.u, g.v, klein_apply(f.klein_aut, Klein::b)));
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumerators
  ////////////////////////////////////////////////////////////////////////

  struct HalfMap {
    Perm                      perm;
    HalfKind                  kind = HalfKind::automorphism;
    std::optional<HalfParams> params;
  };

  struct HalfCounts {
    std::size_t total = 0, automorphisms = 0, anti = 0, proper = 0;
  };

  inline HalfCounts count_kinds(std::vector<HalfMap> const& maps) {
    HalfCounts c;
    c.total = maps.size();
    for (auto const& h : maps) {
      switch (h.kind) {
        case HalfKind::automorphism:
          ++c.automorphisms;
          break;
        case HalfKind::anti_automorphism:
          ++c.anti;
          break;
        case HalfKind::proper:
          ++c.proper;
          break;
      }
    }
    return c;
  }

  inline std::vector<Perm> perms_of(std::vector<HalfMap> const& maps) {
    std::vector<Perm> out;
    out.reserve(maps.size());
    for (auto const& h : maps) {
      out.push_back(h.perm);
    }
    return out;
  }

  // Every F+ and F- over f' in Aut(K), f'' in Aut(M) and u, v with
  // 2u = 2v = 0, classified and sorted by permutation. Pass aut_m to reuse
  // an already computed Aut(M).
  inline std::vector<HalfMap> enumerate_closed(ConstructionBundle const&  b,
                                               std::vector<Perm> const* aut_m = nullptr) {
    require_nondegenerate(b);
    std::vector<Perm> owned;
    if (aut_m == nullptr) {
      owned = automorphisms_of_abelian(b.m.spec);
      aut_m = &owned;
    }
    auto const           inv = involution_subgroup(b.m);
    std::vector<HalfMap> out;
    out.reserve(2 * 6 * aut_m->size() * inv.size() * inv.size());
    for (Sign sign : {Sign::plus, Sign::minus}) {
      for (Index k = 0; k < kKleinAuts.size(); ++k) {
        for (auto const& fm : *aut_m) {
          for (Index u : inv) {
            for (Index v : inv) {
              HalfParams p{sign, k, fm, u, v};
              Perm       f  = closed_form(b, p);
              auto       cl = classify(b.table, f);
              if (!cl.is_half()) {
                throw Error(errc::invalid_argument,
                            "closed-form map " + to_cycle_string(f) + " is not a half-automorphism");
              }
              out.push_back(HalfMap{std::move(f), *cl.kind, std::move(p)});
            }
          }
        }
      }
    }
    std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) { return x.perm < y.perm; });
    auto dup = std::adjacent_find(out.begin(), out.end(),
                                  [](auto const& x, auto const& y) { return x.perm == y.perm; });
    if (dup != out.end()) {
      throw std::logic_error("two parameter tuples define the same map " + to_cycle_string(dup->perm));
    }
    return out;
  }

  inline constexpr std::size_t kBruteForceBound        = 16;
  inline constexpr std::size_t kBruteForceBundleBound  = 32;

  struct BruteForceOptions {
    std::optional<std::size_t> bound;  // defaults: 16, or 32 with a bundle
    unsigned                   workers = 1;
  };

  namespace detail {
    // Backtracking over images of the elements in a BFS order grown from a
    // greedy generating set: e first, then each generator followed by the
    // products it creates. A generator may map to any unused element of
    // the same order; any other element z was first reached as z = xy and
    // may only map to f(x)f(y) or f(y)f(x). Each assignment checks the
    // half-automorphism condition on every pair whose three members are now
    // all assigned, so every completion is a half-automorphism.
    class HalfSearch {
     public:
      HalfSearch(LoopTable const& L, ConstructionBundle const* bundle)
          : _L(L), _bundle(bundle), _n(L.order()) {
        if (is_power_associative(L)) {
          _order = element_orders(L);
        } else {
          _order.assign(_n, 0);
        }
        build_sequence();
        _map.assign(_n, kUnset);
        _used.assign(_n, false);
      }

      // Candidates for the first free choice; the search tree splits here
      // when several workers share the work.
      std::vector<Index> first_candidates() {
        reset();
        return candidates(1);
      }

      std::vector<Perm> run(std::span<Index const> first_choices) {
        reset();
        _results.clear();
        if (_n == 1) {
          _results.push_back(_map);
          return _results;
        }
        for (Index w : first_choices) {
          if (try_assign(_seq[1], w)) {
            dfs(2);
            unassign(_seq[1]);
          }
        }
        return std::move(_results);
      }

     private:
      static constexpr Index kUnset = ~Index{0};

      void reset() {
        std::fill(_map.begin(), _map.end(), kUnset);
        std::fill(_used.begin(), _used.end(), false);
        _assigned.clear();
        Index const e = _L.identity();
        _map[e]       = e;
        _used[e]      = true;
        _assigned.push_back(e);
      }

      bool same_class(Index x, Index y) const {
        if (_order[x] != _order[y]) {
          return false;
        }
        if (_bundle != nullptr) {
          // f(1, M) = (1, M) for every half-automorphism of L_M
          return in_m_subgroup(*_bundle, x) == in_m_subgroup(*_bundle, y);
        }
        return true;
      }

      void build_sequence() {
        std::vector<std::size_t> class_size(_n, 0);
        for (Index x = 0; x < _n; ++x) {
          for (Index y = 0; y < _n; ++y) {
            class_size[x] += same_class(x, y);
          }
        }
        std::vector<Index> by_rarity(_n);
        std::iota(by_rarity.begin(), by_rarity.end(), Index{0});
        std::stable_sort(by_rarity.begin(), by_rarity.end(), [&](Index a, Index b) {
          return std::tie(class_size[a], _order[b]) < std::tie(class_size[b], _order[a]);
        });
        std::vector<bool> in(_n, false);
        _parent.assign(_n, {kUnset, kUnset});
        Index const e = _L.identity();
        _seq          = {e};
        in[e]         = true;
        auto close = [&]() {
          for (std::size_t i = 0; i < _seq.size(); ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
              for (int side = 0; side < 2; ++side) {
                Index const x = side ? _seq[j] : _seq[i];
                Index const y = side ? _seq[i] : _seq[j];
                Index const z = _L.mul(x, y);
                if (!in[z]) {
                  in[z] = true;
                  _seq.push_back(z);
                  _parent[z] = {x, y};
                }
              }
            }
          }
        };
        for (Index g : by_rarity) {
          if (!in[g]) {
            in[g] = true;
            _seq.push_back(g);
            close();
          }
        }
      }

      std::vector<Index> candidates(std::size_t pos) const {
        Index const        z = _seq[pos];
        std::vector<Index> out;
        auto const [x, y] = _parent[z];
        if (x == kUnset) {
          for (Index w = 0; w < _n; ++w) {
            if (!_used[w] && same_class(z, w)) {
              out.push_back(w);
            }
          }
        } else {
          Index const w1 = _L.mul(_map[x], _map[y]);
          Index const w2 = _L.mul(_map[y], _map[x]);
          for (Index w : {w1, w2}) {
            if (!_used[w] && same_class(z, w)
                && std::find(out.begin(), out.end(), w) == out.end()) {
              out.push_back(w);
            }
          }
        }
        return out;
      }

      bool ok(Index p, Index q) const {
        Index const r = _L.mul(p, q);
        if (_map[p] == kUnset || _map[q] == kUnset || _map[r] == kUnset) {
          return true;
        }
        return _map[r] == _L.mul(_map[p], _map[q]) || _map[r] == _L.mul(_map[q], _map[p]);
      }

      bool try_assign(Index z, Index w) {
        _map[z]  = w;
        _used[w] = true;
        _assigned.push_back(z);
        bool good = true;
        for (Index p : _assigned) {
          if (!ok(z, p) || !ok(p, z) || !ok(p, _L.left_div(p, z))) {
            good = false;
            break;
          }
        }
        if (!good) {
          unassign(z);
        }
        return good;
      }

      void unassign(Index z) {
        _assigned.pop_back();
        _used[_map[z]] = false;
        _map[z]        = kUnset;
      }

      void dfs(std::size_t pos) {
        if (pos == _seq.size()) {
          _results.push_back(_map);
          return;
        }
        Index const z = _seq[pos];
        for (Index w : candidates(pos)) {
          if (try_assign(z, w)) {
            dfs(pos + 1);
            unassign(z);
          }
        }
      }

      LoopTable const&                      _L;
      ConstructionBundle const*             _bundle;
      Index                                 _n;
      std::vector<Index>                    _order;
      std::vector<Index>                    _seq;
      std::vector<std::pair<Index, Index>>  _parent;
      std::vector<Index>                    _map;
      std::vector<bool>                     _used;
      std::vector<Index>                    _assigned;
      std::vector<Perm>                     _results;
    };

    inline std::vector<HalfMap> bruteforce(LoopTable const&          L,
                                           ConstructionBundle const* bundle,
                                           BruteForceOptions const&  opts) {
      std::size_t const bound
          = opts.bound.value_or(bundle ? kBruteForceBundleBound : kBruteForceBound);
      if (L.order() > bound) {
        throw Error(errc::bound_exceeded,
                    "brute-force enumeration on " + std::to_string(L.order())
                        + " elements exceeds the bound " + std::to_string(bound));
      }
      std::vector<Perm> perms;
      if (L.order() == 1) {
        perms.push_back(identity_perm(1));
      } else {
        HalfSearch         probe(L, bundle);
        auto const         first   = probe.first_candidates();
        unsigned const     workers = std::max(1u, std::min<unsigned>(opts.workers, first.size()));
        std::vector<std::vector<Index>> shares(workers);
        for (std::size_t i = 0; i < first.size(); ++i) {
          shares[i % workers].push_back(first[i]);
        }
        std::vector<std::vector<Perm>> found(workers);
        if (workers == 1) {
          found[0] = probe.run(shares[0]);
        } else {
          std::vector<std::jthread> pool;
          for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { found[w] = HalfSearch(L, bundle).run(shares[w]); });
          }
        }
        for (auto& part : found) {
          perms.insert(perms.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
      }
      std::sort(perms.begin(), perms.end());
      std::vector<HalfMap> out;
      out.reserve(perms.size());
      for (auto& p : perms) {
        auto cl = classify(L, p);
        if (!cl.is_half()) {
          throw std::logic_error("brute-force completion failed classification");
        }
        std::optional<HalfParams> params;
        if (bundle != nullptr && !bundle->degenerate()) {
          params = decode_params(*bundle, p);
        }
        out.push_back(HalfMap{std::move(p), *cl.kind, std::move(params)});
      }
      return out;
    }
  }  // namespace detail

  // Every half-automorphism of an arbitrary loop (default bound 16).
  inline std::vector<HalfMap> enumerate_bruteforce(LoopTable const&         L,
                                                   BruteForceOptions const& opts = {}) {
    return detail::bruteforce(L, nullptr, opts);
  }

  // Every half-automorphism of L_M (default bound 32). Uses the fact that
  // half-automorphisms of L_M preserve (1, M) to restrict candidate
  // images, and attaches decoded parameters where they exist.
  inline std::vector<HalfMap> enumerate_bruteforce(ConstructionBundle const& b,
                                                   BruteForceOptions const&  opts = {}) {
    return detail::bruteforce(b.table, b.degenerate() ? nullptr : &b, opts);
  }

  ////////////////////////////////////////////////////////////////////////
  // The family H_M of order-4 subloops meeting (1, M) trivially
  ////////////////////////////////////////////////////////////////////////

  enum class HType {
    klein,        // (K, 1)
    one_shift,    // {(1,0), (A,x), (B,x), (C,0)},  2x = 0, x != 0
    two_shifts    // {(1,0), (A,x), (B,y), (C,x+y)}, x != y both of order 2
  };

  inline std::string_view to_string(HType t) noexcept {
    switch (t) {
      case HType::klein:
        return "i";
      case HType::one_shift:
        return "ii";
      case HType::two_shifts:
        return "iii";
    }
    return "?";
  }

  struct HMember {
    std::vector<Index> elements;  // sorted
    HType              type = HType::klein;
  };

  inline std::vector<HMember> enumerate_hm(ConstructionBundle const& b) {
    std::vector<HMember> out;
    for (auto& H : all_subloops_of_order(b.table, 4)) {
      std::size_t meet = std::count_if(H.begin(), H.end(),
                                       [&](Index i) { return in_m_subgroup(b, i); });
      if (meet != 1) {
        continue;
      }
      HType type = HType::two_shifts;
      if (H == b.klein_subloop) {
        type = HType::klein;
      } else if (std::any_of(H.begin(), H.end(), [&](Index i) {
                   return b.klein_part(i) != Klein::one && b.m_part(i) == 0;
                 })) {
        type = HType::one_shift;
      }
      out.push_back(HMember{std::move(H), type});
    }
    return out;
  }

  // Image of a set under a permutation, sorted.
  inline std::vector<Index> image_of(Perm const& f, std::span<Index const> S) {
    std::vector<Index> out;
    out.reserve(S.size());
    for (Index x : S) {
      out.push_back(f[x]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace halfloop
