#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halfloop/error.hpp"

namespace halfloop {

  using Index = std::uint32_t;

  // A permutation of 0..n-1 stored as its image sequence: p[x] is the image
  // of x. Composition follows function notation, compose(g, f) = g o f.
  using Perm = std::vector<Index>;

  inline Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), Index{0});
    return p;
  }

  inline bool is_identity(Perm const& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != i) {
        return false;
      }
    }
    return true;
  }

  inline bool is_permutation(std::span<Index const> p) {
    std::vector<bool> seen(p.size(), false);
    for (Index x : p) {
      if (x >= p.size() || seen[x]) {
        return false;
      }
      seen[x] = true;
    }
    return true;
  }

  inline Perm compose(Perm const& g, Perm const& f) {
    Perm out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      out[i] = g[f[i]];
    }
    return out;
  }

  inline Perm inverse(Perm const& p) {
    Perm out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      out[p[i]] = static_cast<Index>(i);
    }
    return out;
  }

  // phi o p o phi^-1: the permutation p moved along the relabelling phi.
  inline Perm conjugate_by(Perm const& phi, Perm const& p) {
    Perm out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      out[phi[i]] = phi[p[i]];
    }
    return out;
  }

  // Disjoint cycles with each cycle starting at its least point and cycles
  // ordered by that point; fixed points are omitted.
  inline std::vector<std::vector<Index>> cycles(Perm const& p) {
    std::vector<std::vector<Index>> out;
    std::vector<bool>               done(p.size(), false);
    for (Index i = 0; i < p.size(); ++i) {
      if (done[i] || p[i] == i) {
        continue;
      }
      std::vector<Index> cyc;
      for (Index j = i; !done[j]; j = p[j]) {
        done[j] = true;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  // 1-based cycle notation with points right-aligned to the width of the
  // largest point, e.g. "( 2, 9,11, 5, 8, 7)( 3, 6)". The identity is "()".
  inline std::string to_cycle_string(Perm const& p) {
    auto const cyc = cycles(p);
    if (cyc.empty()) {
      return "()";
    }
    std::size_t const width = std::to_string(p.size()).size();
    std::string       out;
    for (auto const& c : cyc) {
      out += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i != 0) {
          out += ',';
        }
        std::string num = std::to_string(c[i] + 1);
        out.append(width - std::min(width, num.size()), ' ');
        out += num;
      }
      out += ')';
    }
    return out;
  }

  // Parses 1-based cycle notation on n points. Whitespace is ignored;
  // "()", "I", "Id" and "I_d" all denote the identity.
  inline Perm parse_cycles(std::string_view text, std::size_t n) {
    std::string s;
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) {
        s += ch;
      }
    }
    Perm p = identity_perm(n);
    if (s.empty() || s == "()" || s == "I" || s == "Id" || s == "I_d") {
      return p;
    }
    std::vector<bool> used(n, false);
    std::size_t       pos = 0;
    auto              fail = [&](std::string const& why) {
      throw Error(errc::parse_error,
                  "cycle notation '" + std::string(text) + "' at offset "
                      + std::to_string(pos) + ": " + why);
    };
    while (pos < s.size()) {
      if (s[pos] != '(') {
        fail("expected '('");
      }
      ++pos;
      std::vector<Index> cyc;
      while (true) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
          ++pos;
        }
        if (start == pos) {
          fail("expected a point");
        }
        unsigned long v = std::stoul(s.substr(start, pos - start));
        if (v == 0 || v > n) {
          fail("point " + std::to_string(v) + " out of range 1.."
               + std::to_string(n));
        }
        if (used[v - 1]) {
          fail("point " + std::to_string(v) + " repeated");
        }
        used[v - 1] = true;
        cyc.push_back(static_cast<Index>(v - 1));
        if (pos >= s.size()) {
          fail("unterminated cycle");
        }
        if (s[pos] == ',') {
          ++pos;
          continue;
        }
        if (s[pos] == ')') {
          ++pos;
          break;
        }
        fail("expected ',' or ')'");
      }
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        p[cyc[i]] = cyc[(i + 1) % cyc.size()];
      }
    }
    return p;
  }

  inline std::size_t perm_order(Perm const& p) {
    std::size_t result = 1;
    for (auto const& c : cycles(p)) {
      result = std::lcm(result, c.size());
    }
    return result;
  }

}  // namespace halfloop
