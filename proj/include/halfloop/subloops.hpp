#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "halfloop/identities.hpp"
#include "halfloop/loop_table.hpp"

namespace halfloop {

  namespace detail {
    // Grows `members` (flagged in `in`) to its closure under product and
    // both divisions. Returns false as soon as the closure exceeds `limit`,
    // leaving the partial closure behind.
    inline bool close_in_place(LoopTable const&    L,
                               std::vector<Index>& members,
                               std::vector<bool>&  in,
                               std::size_t         limit) {
      auto add = [&](Index z) {
        if (!in[z]) {
          in[z] = true;
          members.push_back(z);
        }
        return members.size() <= limit;
      };
      for (std::size_t i = 0; i < members.size(); ++i) {
        Index const x = members[i];
        for (std::size_t j = 0; j <= i; ++j) {
          Index const y = members[j];
          if (!add(L.mul(x, y)) || !add(L.mul(y, x)) || !add(L.left_div(x, y))
              || !add(L.left_div(y, x)) || !add(L.right_div(x, y))
              || !add(L.right_div(y, x))) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace detail

  // Smallest subloop containing the seeds and the identity, sorted.
  inline std::vector<Index> subloop_generated(LoopTable const&       L,
                                              std::span<Index const> seeds) {
    std::vector<bool>  in(L.order(), false);
    std::vector<Index> members{L.identity()};
    in[L.identity()] = true;
    for (Index s : seeds) {
      if (!in[s]) {
        in[s] = true;
        members.push_back(s);
      }
    }
    detail::close_in_place(L, members, in, L.order());
    std::sort(members.begin(), members.end());
    return members;
  }

  inline std::vector<Index> subloop_generated(LoopTable const&             L,
                                              std::initializer_list<Index> seeds) {
    return subloop_generated(L, std::span<Index const>(seeds.begin(), seeds.size()));
  }

  inline bool is_subloop(LoopTable const& L, std::span<Index const> S) {
    std::vector<bool> in(L.order(), false);
    for (Index x : S) {
      in[x] = true;
    }
    if (!in[L.identity()]) {
      return false;
    }
    for (Index x : S) {
      for (Index y : S) {
        if (!in[L.mul(x, y)] || !in[L.left_div(x, y)] || !in[L.right_div(x, y)]) {
          return false;
        }
      }
    }
    return true;
  }

  // Every subloop of order k, each sorted, listed in lexicographic order.
  // The search walks up the subloop lattice from {e}: each subloop of
  // order below k is extended by one outside element and closed, and
  // closures larger than k are abandoned early. Every subloop is reached
  // this way, so the listing is complete for any generator count.
  inline std::vector<std::vector<Index>> all_subloops_of_order(LoopTable const& L,
                                                                std::size_t      k) {
    Index const n = L.order();
    if (k == 0 || k > n) {
      return {};
    }
    std::optional<std::vector<Index>> orders;
    if (is_power_associative(L)) {
      orders = element_orders(L);
    }
    std::set<std::vector<Index>>    seen;
    std::vector<std::vector<Index>> frontier{{L.identity()}};
    seen.insert(frontier.front());
    std::vector<bool> in(n);
    while (!frontier.empty()) {
      std::vector<std::vector<Index>> next;
      for (auto const& S : frontier) {
        if (S.size() >= k) {
          continue;
        }
        std::fill(in.begin(), in.end(), false);
        for (Index s : S) {
          in[s] = true;
        }
        for (Index x = 0; x < n; ++x) {
          // <x> sits inside any subloop containing x
          if (in[x] || (orders && (*orders)[x] > k)) {
            continue;
          }
          std::vector<bool>  in2     = in;
          std::vector<Index> members = S;
          in2[x]                     = true;
          members.push_back(x);
          if (!detail::close_in_place(L, members, in2, k)) {
            continue;
          }
          std::sort(members.begin(), members.end());
          if (seen.insert(members).second) {
            next.push_back(std::move(members));
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<std::vector<Index>> out;
    for (auto const& S : seen) {
      if (S.size() == k) {
        out.push_back(S);
      }
    }
    return out;
  }

}  // namespace halfloop
