#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halfloop/error.hpp"
#include "halfloop/loop_table.hpp"

namespace halfloop {

  // C_{f1} x ... x C_{ft}. The factors need not be invariant factors:
  // {2,2,3} and {2,6} describe isomorphic groups and behave identically
  // everywhere in this library.
  class AbelianSpec {
   public:
    explicit AbelianSpec(std::vector<Index> factors) : _factors(std::move(factors)) {
      if (_factors.empty()) {
        throw Error(errc::invalid_argument, "an abelian spec needs at least one factor");
      }
      for (Index f : _factors) {
        if (f < 2) {
          throw Error(errc::invalid_argument,
                      "cyclic factor orders must be >= 2, got " + std::to_string(f));
        }
      }
    }

    // "4,2" -> C4 x C2
    static AbelianSpec parse(std::string_view text) {
      std::vector<Index> factors;
      std::size_t        pos = 0;
      while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) {
          end = text.size();
        }
        std::string tok(text.substr(pos, end - pos));
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
          throw Error(errc::parse_error,
                      "abelian spec '" + std::string(text)
                          + "': expected comma-separated integers");
        }
        factors.push_back(static_cast<Index>(std::stoul(tok)));
        pos = end + 1;
      }
      return AbelianSpec(std::move(factors));
    }

    std::vector<Index> const& factors() const noexcept {
      return _factors;
    }

    Index order() const noexcept {
      return std::accumulate(_factors.begin(), _factors.end(), Index{1}, std::multiplies<>());
    }

    Index exponent() const noexcept {
      return std::accumulate(_factors.begin(), _factors.end(), Index{1},
                             [](Index a, Index b) { return std::lcm(a, b); });
    }

    std::string to_string() const {
      std::string out;
      for (std::size_t i = 0; i < _factors.size(); ++i) {
        out += (i ? "," : "") + std::to_string(_factors[i]);
      }
      return out;
    }

    // "C4 x C2"
    std::string name() const {
      std::string out;
      for (std::size_t i = 0; i < _factors.size(); ++i) {
        out += (i ? " x C" : "C") + std::to_string(_factors[i]);
      }
      return out;
    }

    friend bool operator==(AbelianSpec const&, AbelianSpec const&) = default;

   private:
    std::vector<Index> _factors;
  };

  // Mixed-radix coding of tuples (r_1..r_t), 0 <= r_i < f_i; the last
  // coordinate varies fastest.
  class TupleCoder {
   public:
    explicit TupleCoder(std::vector<Index> radices) : _radices(std::move(radices)) {
      _strides.assign(_radices.size(), 1);
      for (std::size_t i = _radices.size(); i-- > 1;) {
        _strides[i - 1] = _strides[i] * _radices[i];
      }
    }

    Index size() const noexcept {
      return _radices.empty() ? 1 : _strides.front() * _radices.front();
    }

    std::vector<Index> const& radices() const noexcept {
      return _radices;
    }

    Index encode(std::span<Index const> tuple) const {
      if (tuple.size() != _radices.size()) {
        throw Error(errc::invalid_argument, "tuple length does not match radices");
      }
      Index out = 0;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] >= _radices[i]) {
          throw Error(errc::invalid_argument, "tuple coordinate out of range");
        }
        out += tuple[i] * _strides[i];
      }
      return out;
    }

    Index encode(std::initializer_list<Index> tuple) const {
      return encode(std::span<Index const>(tuple.begin(), tuple.size()));
    }

    std::vector<Index> decode(Index x) const {
      std::vector<Index> out(_radices.size());
      for (std::size_t i = 0; i < _radices.size(); ++i) {
        out[i] = (x / _strides[i]) % _radices[i];
      }
      return out;
    }

    Index coordinate(Index x, std::size_t i) const {
      return (x / _strides[i]) % _radices[i];
    }

   private:
    std::vector<Index> _radices;
    std::vector<Index> _strides;
  };

  // An abelian group materialised as a table, written additively:
  // index 0 is the zero tuple.
  struct AbelianGroup {
    AbelianSpec spec;
    TupleCoder  coder;
    LoopTable   table;

    Index order() const noexcept {
      return table.order();
    }

    Index add(Index x, Index y) const noexcept {
      return table.mul(x, y);
    }

    Index neg(Index x) const noexcept {
      return table.left_div(x, table.identity());
    }

    Index sub(Index x, Index y) const noexcept {
      return add(x, neg(y));
    }
  };

  inline AbelianGroup abelian_group(AbelianSpec const& spec) {
    TupleCoder         coder(spec.factors());
    Index const        n = spec.order();
    std::vector<Index> cells(std::size_t(n) * n);
    std::vector<Index> t(spec.factors().size());
    for (Index x = 0; x < n; ++x) {
      auto const a = coder.decode(x);
      for (Index y = 0; y < n; ++y) {
        auto const b = coder.decode(y);
        for (std::size_t i = 0; i < t.size(); ++i) {
          t[i] = (a[i] + b[i]) % spec.factors()[i];
        }
        cells[x * n + y] = coder.encode(t);
      }
    }
    return AbelianGroup{spec, std::move(coder), LoopTable::from_flat(n, std::move(cells))};
  }

  // Additive order of x in the group (smallest k >= 1 with kx = 0).
  inline Index additive_order(AbelianGroup const& M, Index x) {
    Index k = 1;
    for (Index p = x; p != 0; p = M.add(p, x)) {
      ++k;
    }
    return k;
  }

  // {x : x + x = 0}, sorted.
  inline std::vector<Index> involution_subgroup(AbelianGroup const& M) {
    std::vector<Index> out;
    for (Index x = 0; x < M.order(); ++x) {
      if (M.add(x, x) == 0) {
        out.push_back(x);
      }
    }
    return out;
  }

  inline std::vector<Index> involution_subgroup(AbelianSpec const& spec) {
    return involution_subgroup(abelian_group(spec));
  }

  // s with |{x : 2x = 0}| = 2^s, read off the element scan.
  inline Index involution_rank(AbelianSpec const& spec) {
    std::size_t h = involution_subgroup(spec).size();
    Index       s = 0;
    while ((std::size_t{1} << s) < h) {
      ++s;
    }
    return s;
  }

  inline constexpr std::size_t kDefaultAutBound = 128;

  // All automorphisms of M, sorted by image sequence. Images of the
  // canonical basis e_1..e_t range over elements of the same order; a
  // partial choice is abandoned once the subgroup it generates is smaller
  // than the product of the chosen factor orders. Each surviving map is
  // then checked for bijectivity and additivity on all pairs.
  inline std::vector<Perm> automorphisms_of_abelian(AbelianSpec const& spec,
                                                    std::size_t bound = kDefaultAutBound) {
    if (spec.order() > bound) {
      throw Error(errc::bound_exceeded,
                  "|M| = " + std::to_string(spec.order()) + " exceeds the automorphism bound "
                      + std::to_string(bound));
    }
    AbelianGroup const M = abelian_group(spec);
    Index const        n = M.order();
    auto const&        f = spec.factors();
    std::size_t const  t = f.size();

    std::vector<Index> ord(n);
    for (Index x = 0; x < n; ++x) {
      ord[x] = additive_order(M, x);
    }
    std::vector<Index> images(t);
    std::vector<Perm>  out;

    auto build = [&]() {
      Perm p(n);
      for (Index x = 0; x < n; ++x) {
        auto const r   = M.coder.decode(x);
        Index      acc = 0;
        for (std::size_t i = 0; i < t; ++i) {
          for (Index k = 0; k < r[i]; ++k) {
            acc = M.add(acc, images[i]);
          }
        }
        p[x] = acc;
      }
      return p;
    };

    // span of the chosen images, maintained as a membership vector
    std::function<void(std::size_t, std::vector<Index> const&)> rec;
    rec = [&](std::size_t i, std::vector<Index> const& span) {
      if (i == t) {
        Perm p = build();
        if (!is_permutation(p)) {
          return;
        }
        for (Index x = 0; x < n; ++x) {
          for (Index y = 0; y < n; ++y) {
            if (p[M.add(x, y)] != M.add(p[x], p[y])) {
              return;
            }
          }
        }
        out.push_back(std::move(p));
        return;
      }
      std::vector<bool> in(n, false);
      for (Index s : span) {
        in[s] = true;
      }
      for (Index y = 0; y < n; ++y) {
        if (ord[y] != f[i]) {
          continue;
        }
        // span + <y> must have size |span| * f_i
        std::vector<Index> next;
        std::vector<bool>  seen(n, false);
        Index              m = 0;
        bool               ok = true;
        for (Index k = 0; k < f[i] && ok; ++k) {
          for (Index s : span) {
            Index z = M.add(s, m);
            if (seen[z]) {
              ok = false;
              break;
            }
            seen[z] = true;
            next.push_back(z);
          }
          m = M.add(m, y);
        }
        if (!ok) {
          continue;
        }
        images[i] = y;
        rec(i + 1, next);
      }
    };
    rec(0, {0});
    std::sort(out.begin(), out.end());
    return out;
  }

  // D(M) = M u Mr with r^2 = 1 and r x r = -x. Index x < |M| is x itself;
  // index |M| + x is the coset element x r. Products:
  //   x * y = x + y,     x * (y r) = (x + y) r,
  //   (x r) * y = (x - y) r,   (x r) * (y r) = x - y.
  inline LoopTable generalized_dihedral(AbelianSpec const& spec) {
    AbelianGroup const M = abelian_group(spec);
    Index const        m = M.order(), n = 2 * m;
    std::vector<Index> cells(std::size_t(n) * n);
    for (Index i = 0; i < n; ++i) {
      Index const x = i % m;
      bool const  xr = i >= m;
      for (Index j = 0; j < n; ++j) {
        Index const y  = j % m;
        bool const  yr = j >= m;
        Index const base = xr ? M.sub(x, y) : M.add(x, y);
        cells[i * n + j] = (xr != yr) ? m + base : base;
      }
    }
    return LoopTable::from_flat(n, std::move(cells));
  }

  struct ProductTable {
    LoopTable  table;
    TupleCoder coder;
  };

  // Componentwise product; coordinate i of an element is its index in
  // factors[i], coded by the returned TupleCoder.
  inline ProductTable direct_product(std::span<LoopTable const> factors) {
    if (factors.empty()) {
      throw Error(errc::invalid_argument, "direct product of no factors");
    }
    std::vector<Index> radices;
    for (auto const& F : factors) {
      radices.push_back(F.order());
    }
    TupleCoder         coder(radices);
    Index const        n = coder.size();
    std::vector<Index> cells(std::size_t(n) * n);
    std::vector<Index> t(factors.size());
    for (Index x = 0; x < n; ++x) {
      auto const a = coder.decode(x);
      for (Index y = 0; y < n; ++y) {
        auto const b = coder.decode(y);
        for (std::size_t i = 0; i < t.size(); ++i) {
          t[i] = factors[i].mul(a[i], b[i]);
        }
        cells[x * n + y] = coder.encode(t);
      }
    }
    return ProductTable{LoopTable::from_flat(n, std::move(cells)), std::move(coder)};
  }

  inline ProductTable direct_product(std::initializer_list<LoopTable> factors) {
    std::vector<LoopTable> v(factors);
    return direct_product(std::span<LoopTable const>(v));
  }

}  // namespace halfloop
