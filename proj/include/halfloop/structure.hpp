#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "halfloop/abelian.hpp"
#include "halfloop/construction.hpp"
#include "halfloop/halfmorph.hpp"
#include "halfloop/isomorphism.hpp"
#include "halfloop/loop_table.hpp"
#include "halfloop/perm.hpp"

namespace halfloop {

  inline constexpr std::size_t kDefaultGroupBound = 10000;

  // An explicitly enumerated permutation group. Elements are kept sorted by
  // image sequence; closure under composition is checked on construction.
  class PermGroup {
   public:
    // Throws NotAGroup unless `elements` (duplicates allowed) contains the
    // identity and is closed under composition. Closure implies inverse
    // closure for a finite set of permutations.
    static PermGroup from_elements(std::size_t degree, std::vector<Perm> elements,
                                   std::vector<Perm> generators = {}) {
      PermGroup G;
      G._degree = degree;
      std::sort(elements.begin(), elements.end());
      elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
      G._elements   = std::move(elements);
      G._generators = generators.empty() ? G._elements : std::move(generators);
      for (auto const& p : G._elements) {
        if (p.size() != degree || !is_permutation(p)) {
          throw Error(errc::invalid_argument, "group element of wrong degree or not a permutation");
        }
      }
      if (!G.contains(identity_perm(degree))) {
        throw Error(errc::not_a_group, "element set lacks the identity");
      }
      for (auto const& g : G._elements) {
        for (auto const& f : G._elements) {
          if (!G.contains(compose(g, f))) {
            throw Error(errc::not_a_group,
                        "product of " + to_cycle_string(g) + " and " + to_cycle_string(f)
                            + " leaves the set");
          }
        }
      }
      return G;
    }

    std::size_t degree() const noexcept {
      return _degree;
    }

    std::size_t size() const noexcept {
      return _elements.size();
    }

    std::vector<Perm> const& elements() const noexcept {
      return _elements;
    }

    std::vector<Perm> const& generators() const noexcept {
      return _generators;
    }

    bool contains(Perm const& p) const {
      return std::binary_search(_elements.begin(), _elements.end(), p);
    }

    std::size_t index_of(Perm const& p) const {
      auto it = std::lower_bound(_elements.begin(), _elements.end(), p);
      if (it == _elements.end() || *it != p) {
        throw Error(errc::not_subset, to_cycle_string(p) + " is not in the group");
      }
      return static_cast<std::size_t>(it - _elements.begin());
    }

    // Cayley table over element positions; g * f means g o f.
    LoopTable cayley_table() const {
      std::size_t const  n = size();
      std::vector<Index> cells(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          cells[i * n + j] = static_cast<Index>(index_of(compose(_elements[i], _elements[j])));
        }
      }
      return LoopTable::from_flat(n, std::move(cells));
    }

    bool is_abelian() const {
      for (auto const& g : _generators) {
        for (auto const& f : _generators) {
          if (compose(g, f) != compose(f, g)) {
            return false;
          }
        }
      }
      return true;
    }

    // every element squares to the identity
    bool has_exponent_two() const {
      return std::all_of(_elements.begin(), _elements.end(),
                         [](Perm const& p) { return is_identity(compose(p, p)); });
    }

   private:
    std::size_t       _degree = 0;
    std::vector<Perm> _elements;
    std::vector<Perm> _generators;
  };

  // Closure of the generators under composition, by worklist. Throws
  // BoundExceeded once more than `bound` elements have been found.
  inline PermGroup generate_group(std::size_t             degree,
                                  std::vector<Perm> const& gens,
                                  std::size_t             bound = kDefaultGroupBound) {
    std::set<Perm>    seen{identity_perm(degree)};
    std::vector<Perm> work{identity_perm(degree)};
    for (std::size_t i = 0; i < work.size(); ++i) {
      for (auto const& g : gens) {
        if (g.size() != degree) {
          throw Error(errc::invalid_argument, "generator of wrong degree");
        }
        Perm p = compose(work[i], g);
        if (seen.insert(p).second) {
          if (seen.size() > bound) {
            throw Error(errc::bound_exceeded,
                        "group closure exceeds " + std::to_string(bound) + " elements");
          }
          work.push_back(std::move(p));
        }
      }
    }
    return PermGroup::from_elements(degree, std::move(work), gens);
  }

  inline void require_subset(PermGroup const& G, PermGroup const& N) {
    for (auto const& n : N.elements()) {
      if (!G.contains(n)) {
        throw Error(errc::not_subset, to_cycle_string(n) + " lies outside the ambient group");
      }
    }
  }

  // g N g^-1 = N for all g in G. Throws NotSubset unless N is inside G.
  inline bool is_normal(PermGroup const& G, PermGroup const& N) {
    require_subset(G, N);
    for (auto const& g : G.generators()) {
      Perm const gi = inverse(g);
      for (auto const& n : N.generators()) {
        if (!N.contains(compose(compose(g, n), gi))) {
          return false;
        }
      }
    }
    return true;
  }

  // z in G commuting with every element of G.
  inline bool is_central(PermGroup const& G, Perm const& z) {
    if (!G.contains(z)) {
      throw Error(errc::not_subset, to_cycle_string(z) + " lies outside the group");
    }
    return std::all_of(G.generators().begin(), G.generators().end(),
                       [&](Perm const& g) { return compose(g, z) == compose(z, g); });
  }

  inline PermGroup intersect(PermGroup const& G1, PermGroup const& G2) {
    std::vector<Perm> common;
    std::set_intersection(G1.elements().begin(), G1.elements().end(), G2.elements().begin(),
                          G2.elements().end(), std::back_inserter(common));
    return PermGroup::from_elements(G1.degree(), std::move(common));
  }

  // {g o h : g in G1, h in G2}, sorted and deduplicated.
  inline std::vector<Perm> setwise_product(PermGroup const& G1, PermGroup const& G2) {
    std::vector<Perm> out;
    out.reserve(G1.size() * G2.size());
    for (auto const& g : G1.elements()) {
      for (auto const& h : G2.elements()) {
        out.push_back(compose(g, h));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  inline bool is_closed_under_composition(std::vector<Perm> const& sorted) {
    for (auto const& g : sorted) {
      for (auto const& f : sorted) {
        if (!std::binary_search(sorted.begin(), sorted.end(), compose(g, f))) {
          return false;
        }
      }
    }
    return true;
  }

  // Isomorphism between two explicit groups, by loop isomorphism search on
  // their Cayley tables. Positions index the sorted element lists.
  inline std::optional<Perm> find_group_isomorphism(PermGroup const& G, PermGroup const& H) {
    if (G.size() != H.size()) {
      return std::nullopt;
    }
    return find_isomorphism(G.cayley_table(), H.cayley_table());
  }

  // The regular representation of a group table, for comparing a table
  // against explicit permutation groups.
  inline PermGroup regular_representation(LoopTable const& G) {
    std::vector<Perm> elems;
    for (Index g = 0; g < G.order(); ++g) {
      Perm p(G.order());
      for (Index x = 0; x < G.order(); ++x) {
        p[x] = G.mul(g, x);
      }
      elems.push_back(std::move(p));
    }
    return PermGroup::from_elements(G.order(), std::move(elems));
  }

  ////////////////////////////////////////////////////////////////////////
  // Structure of Half(L_M) and Aut(L_M)
  ////////////////////////////////////////////////////////////////////////

  struct Claim {
    std::string id;
    std::string statement;
    bool        passed = false;
    std::string detail;
  };

  struct StructureOptions {
    // compose_params is compared with functional composition on all pairs
    // of half-automorphisms when there are at most this many pairs...
    std::size_t exhaustive_pair_limit = 100000;
    // ...and on this many random pairs otherwise
    std::size_t   random_pairs = 10000;
    std::uint64_t seed         = 0x5eedULL;
    // isomorphism-search witnesses run for groups up to this order
    std::size_t iso_witness_limit = 64;
    // also enumerate Half by brute force and compare (|L_M| <= 32)
    bool bruteforce_crosscheck = false;
  };

  struct StructureReport {
    AbelianSpec spec{std::vector<Index>{2}};
    Index       s           = 0;
    std::size_t aut_m_size  = 0;
    std::size_t half_size   = 0;
    std::size_t aut_size    = 0;
    std::size_t a_size      = 0;
    std::size_t b_size      = 0;
    std::size_t pairs_checked = 0;
    bool        pairs_exhaustive = false;

    std::vector<Claim> claims;

    // witnesses
    std::vector<HalfMap> half;     // all of Half(L_M), sorted
    std::vector<Perm>    a_group;  // F+(f', f'', 0, 0)
    std::vector<Perm>    b_group;  // F+(I, I, u, v)
    Perm                 central;  // F-(I, I, 0, 0)
    // pairing F+(f', f'', 0, 0) -> (f', f'')
    std::vector<std::pair<Perm, std::pair<Index, Perm>>> pairing;

    bool all_passed() const {
      return std::all_of(claims.begin(), claims.end(), [](Claim const& c) { return c.passed; });
    }

    Claim const* find(std::string_view id) const {
      for (auto const& c : claims) {
        if (c.id == id) {
          return &c;
        }
      }
      return nullptr;
    }
  };

  namespace detail {
    inline bool contains_sorted(std::vector<Perm> const& v, Perm const& p) {
      return std::binary_search(v.begin(), v.end(), p);
    }
  }  // namespace detail

  // Builds Half(L_M) from the closed form and checks, with explicit
  // witnesses, that
  //   * Half is a group of the predicted size, F+ automorphisms, F- proper;
  //   * z = F-(I, I, 0, 0) is central of order 2 and Half = <z> x Aut;
  //   * A = {F+(f', f'', 0, 0)} is isomorphic to Aut(K) x Aut(M) via the
  //     pairing to (f', f'');
  //   * B = {F+(I, I, u, v)} is elementary abelian of order 4^s, normal in
  //     Aut, meets A trivially, and Aut = AB = BA with Aut/B = A;
  //   * Aut is the semidirect product of A acting on B by conjugation;
  //   * parameters compose as compose_params predicts.
  // Any failed check is reported as a failed claim, never thrown.
  inline StructureReport verify_structure(ConstructionBundle const& b,
                                          StructureOptions const&   opts = {}) {
    require_nondegenerate(b);
    StructureReport r;
    r.spec = b.m.spec;
    r.s    = involution_rank(b.m.spec);

    Index const       n      = b.table.order();
    auto const        aut_m  = automorphisms_of_abelian(b.m.spec);
    auto const        inv    = involution_subgroup(b.m);
    r.aut_m_size             = aut_m.size();
    r.half                   = enumerate_closed(b, &aut_m);
    r.half_size              = r.half.size();

    auto add = [&](std::string id, std::string statement, bool ok, std::string detail = {}) {
      r.claims.push_back(Claim{std::move(id), std::move(statement), ok, std::move(detail)});
    };
    auto sz = [](std::size_t v) { return std::to_string(v); };

    std::vector<Perm> half_perms = perms_of(r.half);  // sorted
    std::vector<Perm> aut_perms;
    for (auto const& h : r.half) {
      if (h.params->sign == Sign::plus) {
        aut_perms.push_back(h.perm);
      }
    }

    // kinds and counts
    {
      auto const        c        = count_kinds(r.half);
      std::size_t const expected = (std::size_t{2} << (2 * r.s)) * 6 * aut_m.size();
      bool              signs_ok = std::all_of(r.half.begin(), r.half.end(), [](HalfMap const& h) {
        return (h.params->sign == Sign::plus) == (h.kind == HalfKind::automorphism)
               && h.kind != HalfKind::anti_automorphism;
      });
      add("half-count", "|Half| = 2^(2s+1) * |Aut(K)| * |Aut(M)|", c.total == expected,
          "|Half| = " + sz(c.total) + ", formula = " + sz(expected));
      add("half-kinds", "F+ maps are automorphisms, F- maps are proper, none are anti",
          signs_ok && c.anti == 0,
          sz(c.automorphisms) + " automorphisms, " + sz(c.proper) + " proper, " + sz(c.anti)
              + " anti");
    }

    // Half is a group
    bool const half_closed = is_closed_under_composition(half_perms);
    add("half-group", "Half(L_M) is closed under composition and inversion", half_closed,
        "checked " + sz(half_perms.size() * half_perms.size()) + " products");

    r.aut_size = aut_perms.size();
    add("aut-index-two", "|Half| = 2 |Aut|", r.half_size == 2 * r.aut_size,
        "|Aut| = " + sz(r.aut_size));

    // central involution and Half = <z> x Aut
    r.central = closed_form(b, identity_params(b, Sign::minus));
    {
      bool central = detail::contains_sorted(half_perms, r.central)
                     && std::all_of(half_perms.begin(), half_perms.end(), [&](Perm const& g) {
                          return compose(g, r.central) == compose(r.central, g);
                        });
      bool order_two = !is_identity(r.central) && is_identity(compose(r.central, r.central));
      bool meet_trivial = !detail::contains_sorted(aut_perms, r.central);
      std::vector<Perm> zaut = aut_perms;
      for (auto const& g : aut_perms) {
        zaut.push_back(compose(r.central, g));
      }
      std::sort(zaut.begin(), zaut.end());
      zaut.erase(std::unique(zaut.begin(), zaut.end()), zaut.end());
      add("half-direct-c2",
          "z = F-(I,I,0,0) is a central involution, <z> meets Aut trivially and <z>Aut = Half",
          central && order_two && meet_trivial && zaut == half_perms,
          "z = " + to_cycle_string(r.central));
    }

    // A and its pairing with Aut(K) x Aut(M)
    {
      std::vector<Perm> a;
      for (Index k = 0; k < kKleinAuts.size(); ++k) {
        for (auto const& fm : aut_m) {
          Perm p = closed_form(b, HalfParams{Sign::plus, k, fm, 0, 0});
          r.pairing.push_back({p, {k, fm}});
          a.push_back(std::move(p));
        }
      }
      std::sort(a.begin(), a.end());
      bool const injective = std::adjacent_find(a.begin(), a.end()) == a.end();
      r.a_group            = a;
      r.a_size             = a.size();
      bool hom             = injective;
      for (auto const& [g, gk] : r.pairing) {
        for (auto const& [f, fk] : r.pairing) {
          Perm const gf = compose(g, f);
          // image of gf under the pairing must be the componentwise product
          Index const k  = klein_compose(gk.first, fk.first);
          Perm const  mm = compose(gk.second, fk.second);
          hom = hom && gf == closed_form(b, HalfParams{Sign::plus, k, mm, 0, 0});
        }
      }
      add("a-iso-autk-autm",
          "A = {F+(f',f'',0,0)} is isomorphic to Aut(K) x Aut(M) via F+(f',f'',0,0) -> (f',f'')",
          hom && r.a_size == 6 * aut_m.size(),
          "|A| = " + sz(r.a_size) + " = 6 * " + sz(aut_m.size()));
    }

    // B
    {
      std::vector<Perm> bb;
      for (Index u : inv) {
        for (Index v : inv) {
          bb.push_back(closed_form(b, HalfParams{Sign::plus, 0, identity_perm(b.m_order()), u, v}));
        }
      }
      std::sort(bb.begin(), bb.end());
      r.b_group = bb;
      r.b_size  = bb.size();
      bool closed = is_closed_under_composition(bb);
      bool exp2   = std::all_of(bb.begin(), bb.end(),
                              [](Perm const& p) { return is_identity(compose(p, p)); });
      bool abelian = true;
      for (auto const& x : bb) {
        for (auto const& y : bb) {
          abelian = abelian && compose(x, y) == compose(y, x);
        }
      }
      std::size_t const expected = std::size_t{1} << (2 * r.s);
      add("b-elementary-abelian", "B = {F+(I,I,u,v)} is elementary abelian of order 2^(2s)",
          closed && exp2 && abelian && bb.size() == expected,
          "|B| = " + sz(bb.size()) + ", 2^(2s) = " + sz(expected));
    }

    // B normal in Aut, A and B inside Aut
    bool const a_in_aut = std::all_of(r.a_group.begin(), r.a_group.end(),
                                      [&](Perm const& p) { return detail::contains_sorted(aut_perms, p); });
    bool const b_in_aut = std::all_of(r.b_group.begin(), r.b_group.end(),
                                      [&](Perm const& p) { return detail::contains_sorted(aut_perms, p); });
    {
      bool normal = b_in_aut;
      for (auto const& g : aut_perms) {
        Perm const gi = inverse(g);
        for (auto const& x : r.b_group) {
          normal = normal && detail::contains_sorted(r.b_group, compose(compose(g, x), gi));
        }
      }
      add("b-normal", "B is normal in Aut(L_M)", normal);
    }
    {
      std::vector<Perm> meet;
      std::set_intersection(r.a_group.begin(), r.a_group.end(), r.b_group.begin(),
                            r.b_group.end(), std::back_inserter(meet));
      add("a-meet-b-trivial", "A and B intersect in the identity",
          meet.size() == 1 && is_identity(meet.front()), "|A n B| = " + sz(meet.size()));
    }
    {
      std::vector<Perm> ab, ba;
      for (auto const& x : r.a_group) {
        for (auto const& y : r.b_group) {
          ab.push_back(compose(x, y));
          ba.push_back(compose(y, x));
        }
      }
      for (auto* v : {&ab, &ba}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
      }
      add("aut-eq-ab", "Aut(L_M) = AB = BA", a_in_aut && b_in_aut && ab == aut_perms && ba == aut_perms,
          "|AB| = " + sz(ab.size()) + ", |BA| = " + sz(ba.size()));
    }

    // Aut/B = A: every coset gB holds exactly one element of A, and the
    // resulting map Aut -> A is a homomorphism with kernel B
    std::vector<Perm> a_part(aut_perms.size()), b_part(aut_perms.size());
    {
      bool well_defined = true;
      for (std::size_t i = 0; i < aut_perms.size(); ++i) {
        int hits = 0;
        for (auto const& x : r.b_group) {
          Perm c = compose(aut_perms[i], x);
          if (detail::contains_sorted(r.a_group, c)) {
            ++hits;
            a_part[i] = c;
            // g = beta alpha with alpha = c, beta = g alpha^-1
            b_part[i] = compose(aut_perms[i], inverse(c));
          }
        }
        well_defined = well_defined && hits == 1
                       && detail::contains_sorted(r.b_group, b_part[i]);
      }
      bool hom    = well_defined;
      bool kernel = well_defined;
      if (well_defined) {
        auto pos = [&](Perm const& p) {
          return static_cast<std::size_t>(
              std::lower_bound(aut_perms.begin(), aut_perms.end(), p) - aut_perms.begin());
        };
        for (std::size_t i = 0; i < aut_perms.size() && hom; ++i) {
          for (std::size_t j = 0; j < aut_perms.size() && hom; ++j) {
            std::size_t k = pos(compose(aut_perms[i], aut_perms[j]));
            hom = k < aut_perms.size() && a_part[k] == compose(a_part[i], a_part[j]);
          }
        }
        for (std::size_t i = 0; i < aut_perms.size(); ++i) {
          kernel = kernel
                   && (is_identity(a_part[i]) == detail::contains_sorted(r.b_group, aut_perms[i]));
        }
      }
      add("aut-mod-b-iso-a", "the coset map Aut/B -> A is well defined, bijective and multiplicative",
          hom && kernel);

      // (alpha, beta)(alpha', beta') = (alpha alpha', beta alpha beta' alpha^-1)
      bool semidirect = hom && kernel;
      if (semidirect) {
        for (std::size_t i = 0; i < aut_perms.size() && semidirect; ++i) {
          Perm const ai = inverse(a_part[i]);
          for (std::size_t j = 0; j < aut_perms.size() && semidirect; ++j) {
            Perm const alpha = compose(a_part[i], a_part[j]);
            Perm const beta  = compose(b_part[i], compose(compose(a_part[i], b_part[j]), ai));
            semidirect       = compose(beta, alpha) == compose(aut_perms[i], aut_perms[j]);
          }
        }
      }
      add("aut-semidirect",
          "beta alpha -> (alpha, beta) identifies Aut(L_M) with A acting on B by conjugation",
          semidirect);
    }

    // parameter composition law
    {
      std::size_t const h = r.half.size();
      bool              ok = true;
      auto check = [&](HalfMap const& g, HalfMap const& f) {
        Perm const lhs = compose(g.perm, f.perm);
        Perm const rhs = closed_form(b, compose_params(b, *g.params, *f.params));
        ok             = ok && lhs == rhs;
        ++r.pairs_checked;
      };
      if (h * h <= opts.exhaustive_pair_limit) {
        r.pairs_exhaustive = true;
        for (auto const& g : r.half) {
          for (auto const& f : r.half) {
            check(g, f);
          }
        }
      } else {
        std::mt19937_64                            rng(opts.seed);
        std::uniform_int_distribution<std::size_t> pick(0, h - 1);
        for (std::size_t i = 0; i < opts.random_pairs; ++i) {
          std::size_t const gi = pick(rng);
          check(r.half[gi], r.half[pick(rng)]);
        }
      }
      add("compose-law", "compose_params agrees with composition of the maps", ok,
          sz(r.pairs_checked) + (r.pairs_exhaustive ? " pairs (all)" : " random pairs"));
    }

    if (b.m.order() % 2 == 1) {
      bool const trivial_b = r.b_size == 1;
      add("odd-order-form", "|M| odd: B is trivial and Aut(L_M) = A, so Half = C2 x S3 x Aut(M)",
          trivial_b && r.a_group == aut_perms);
    }

    // Aut(K) = S3, checked by isomorphism search against D(C3)
    {
      std::vector<Perm> klein;
      for (auto const& k : kKleinAuts) {
        Perm p(4);
        for (int i = 0; i < 4; ++i) {
          p[i] = static_cast<Index>(k[i]);
        }
        klein.push_back(std::move(p));
      }
      auto const autk = PermGroup::from_elements(4, std::move(klein));
      auto const s3   = regular_representation(generalized_dihedral(AbelianSpec({3})));
      add("autk-is-s3", "Aut(K) is isomorphic to S3", find_group_isomorphism(autk, s3).has_value());
    }
    if (r.a_size <= opts.iso_witness_limit) {
      auto const a = PermGroup::from_elements(n, r.a_group);
      auto const s3 = generalized_dihedral(AbelianSpec({3}));
      auto const am = PermGroup::from_elements(b.m_order(), aut_m).cayley_table();
      auto const prod = direct_product({s3, am}).table;
      bool ok = find_isomorphism(a.cayley_table(), prod).has_value();
      add("a-iso-s3-autm", "A is isomorphic to S3 x Aut(M) (explicit isomorphism found)", ok,
          "|A| = " + sz(r.a_size));
    }

    if (opts.bruteforce_crosscheck) {
      if (n <= kBruteForceBundleBound) {
        auto bf = perms_of(enumerate_bruteforce(b));
        add("bruteforce-agrees", "brute-force enumeration finds exactly the closed-form maps",
            bf == half_perms, sz(bf.size()) + " maps by brute force");
      } else {
        add("bruteforce-agrees", "brute-force enumeration finds exactly the closed-form maps",
            false, "skipped: |L_M| = " + sz(n) + " exceeds the brute-force bound");
      }
    }
    return r;
  }

}  // namespace halfloop
