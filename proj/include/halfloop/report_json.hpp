#pragma once

#include <nlohmann/json.hpp>

#include "halfloop/construction.hpp"
#include "halfloop/halfmorph.hpp"
#include "halfloop/identities.hpp"
#include "halfloop/nuclei.hpp"
#include "halfloop/structure.hpp"
#include "halfloop/subloops.hpp"

// JSON views of the reports. Element numbers are 1-based throughout, like
// the table files; permutations appear in cycle notation. Field names are
// documented in docs/json-schema.md.

namespace halfloop::json {

  using nlohmann::json;

  inline json one_based(std::vector<Index> const& v) {
    json out = json::array();
    for (Index x : v) {
      out.push_back(x + 1);
    }
    return out;
  }

  inline json to_json(IdentityCheck const& c) {
    json out{{"holds", c.holds}};
    if (c.witness) {
      out["witness"] = {(*c.witness)[0] + 1, (*c.witness)[1] + 1, (*c.witness)[2] + 1};
    }
    return out;
  }

  inline json to_json(IdentityReport const& r) {
    return {{"right_bol", to_json(r.right_bol)},
            {"left_bol", to_json(r.left_bol)},
            {"moufang", to_json(r.moufang)},
            {"associative", to_json(r.associative)},
            {"commutative", to_json(r.commutative)},
            {"power_associative", to_json(r.power_associative)},
            {"flexible", to_json(r.flexible)}};
  }

  inline json to_json(NucleiReport const& r) {
    return {{"left", one_based(r.left)},          {"middle", one_based(r.middle)},
            {"right", one_based(r.right)},        {"nucleus", one_based(r.nucleus)},
            {"commutant", one_based(r.commutant)}, {"center", one_based(r.center)}};
  }

  // identities, element orders, nuclei and order-4 subloops of a table
  inline json analyze(LoopTable const& L) {
    auto const ids = check_identities(L);
    json       out{{"order", L.order()}, {"identities", to_json(ids)}};
    if (ids.power_associative.holds) {
      auto const ord = element_orders(L);
      out["element_orders"] = ord;
    } else {
      out["element_orders"] = nullptr;
    }
    auto const nuc = nuclei(L);
    out["nuclei"]  = to_json(nuc);
    out["sizes"]   = {{"left", nuc.left.size()},         {"middle", nuc.middle.size()},
                      {"right", nuc.right.size()},       {"nucleus", nuc.nucleus.size()},
                      {"commutant", nuc.commutant.size()}, {"center", nuc.center.size()}};
    json subs = json::array();
    for (auto const& H : all_subloops_of_order(L, 4)) {
      subs.push_back(one_based(H));
    }
    out["subloops_of_order_4"] = subs;
    return out;
  }

  inline json to_json(ConstructionBundle const& b, HalfParams const& p) {
    auto tuple = [&](Index x) { return b.m.coder.decode(x); };
    return {{"sign", std::string(1, sign_char(p.sign))},
            {"klein_aut", kKleinAutNames[p.klein_aut]},
            {"m_aut", to_cycle_string(p.m_aut)},
            {"u", tuple(p.u)},
            {"v", tuple(p.v)}};
  }

  inline json to_json(HalfMap const& h, ConstructionBundle const* b = nullptr) {
    json out{{"perm", to_cycle_string(h.perm)}, {"kind", to_string(h.kind)}};
    if (b != nullptr && h.params) {
      out["params"] = to_json(*b, *h.params);
    } else {
      out["params"] = nullptr;
    }
    return out;
  }

  inline json to_json(std::vector<HalfMap> const& maps, ConstructionBundle const* b = nullptr) {
    auto const c = count_kinds(maps);
    json       list = json::array();
    for (auto const& h : maps) {
      list.push_back(to_json(h, b));
    }
    return {{"counts",
             {{"total", c.total},
              {"automorphisms", c.automorphisms},
              {"anti_automorphisms", c.anti},
              {"proper", c.proper}}},
            {"maps", list}};
  }

  inline json to_json(StructureReport const& r, ConstructionBundle const& b) {
    json claims = json::array();
    for (auto const& c : r.claims) {
      claims.push_back(
          {{"id", c.id}, {"statement", c.statement}, {"passed", c.passed}, {"detail", c.detail}});
    }
    json pairing = json::array();
    for (auto const& [perm, parts] : r.pairing) {
      pairing.push_back({{"perm", to_cycle_string(perm)},
                         {"klein_aut", kKleinAutNames[parts.first]},
                         {"m_aut", to_cycle_string(parts.second)}});
    }
    auto cycles = [](std::vector<Perm> const& v) {
      json out = json::array();
      for (auto const& p : v) {
        out.push_back(to_cycle_string(p));
      }
      return out;
    };
    return {{"m", r.spec.to_string()},
            {"s", r.s},
            {"sizes",
             {{"aut_m", r.aut_m_size},
              {"half", r.half_size},
              {"aut", r.aut_size},
              {"A", r.a_size},
              {"B", r.b_size}}},
            {"all_passed", r.all_passed()},
            {"claims", claims},
            {"witnesses",
             {{"central", to_cycle_string(r.central)},
              {"A", cycles(r.a_group)},
              {"B", cycles(r.b_group)},
              {"pairing", pairing},
              {"compose_pairs_checked", r.pairs_checked},
              {"compose_exhaustive", r.pairs_exhaustive}}},
            {"order", b.table.order()}};
  }

}  // namespace halfloop::json
