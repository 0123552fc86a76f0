#include <catch_amalgamated.hpp>

#include "halfloop/halfloop.hpp"
#include "oracles.hpp"

using namespace halfloop;

namespace {

  LoopTable bol12() {
    return load_table(std::filesystem::path(HALFLOOP_FIXTURE_DIR) / "bol12_table.txt");
  }

  void require_all_green(StructureReport const& r) {
    for (auto const& c : r.claims) {
      INFO(c.id << ": " << c.statement << " [" << c.detail << "]");
      CHECK(c.passed);
    }
  }

}  // namespace

TEST_CASE("generate_group") {
  CHECK(generate_group(5, {identity_perm(5)}).size() == 1);
  CHECK(generate_group(5, {}).size() == 1);
  CHECK(generate_group(12, {parse_cycles("( 3, 6)", 12)}).size() == 2);
  // S5 from a transposition and a 5-cycle
  auto const S5 = generate_group(5, {parse_cycles("(1,2)", 5), parse_cycles("(1,2,3,4,5)", 5)});
  CHECK(S5.size() == 120);
  CHECK_FALSE(S5.is_abelian());
  try {
    generate_group(7, {parse_cycles("(1,2)", 7), parse_cycles("(1,2,3,4,5,6,7)", 7)}, 1000);
    FAIL("expected BoundExceeded");
  } catch (Error const& e) {
    CHECK(e.code() == errc::bound_exceeded);
  }
}

TEST_CASE("Half(L_C3) generates nothing new") {
  auto const b    = build_lm(AbelianSpec({3}));
  auto const half = perms_of(enumerate_closed(b));
  auto const G    = generate_group(12, half);
  CHECK(G.size() == 24);
  CHECK(G.elements() == half);
}

TEST_CASE("from_elements rejects sets that are not groups") {
  CHECK_THROWS_AS(PermGroup::from_elements(3, {parse_cycles("(1,2)", 3)}), Error);
  CHECK_THROWS_AS(PermGroup::from_elements(3, {identity_perm(3), parse_cycles("(1,2,3)", 3)}), Error);
  CHECK(PermGroup::from_elements(3, {identity_perm(3), parse_cycles("(1,2)", 3)}).size() == 2);
}

TEST_CASE("normality, centrality, intersections and products") {
  auto const S4 = generate_group(4, {parse_cycles("(1,2)", 4), parse_cycles("(1,2,3,4)", 4)});
  auto const V  = generate_group(4, {parse_cycles("(1,2)(3,4)", 4), parse_cycles("(1,3)(2,4)", 4)});
  auto const T  = generate_group(4, {parse_cycles("(1,2)", 4)});
  auto const A4 = generate_group(4, {parse_cycles("(1,2,3)", 4), parse_cycles("(2,3,4)", 4)});
  CHECK(S4.size() == 24);
  CHECK(is_normal(S4, V));
  CHECK(is_normal(S4, A4));
  CHECK_FALSE(is_normal(S4, T));
  CHECK(is_normal(V, generate_group(4, {parse_cycles("(1,2)(3,4)", 4)})));  // abelian
  CHECK(intersect(A4, T).size() == 1);
  CHECK(intersect(S4, V).size() == 4);
  CHECK(setwise_product(A4, T).size() == 24);
  CHECK(is_central(S4, identity_perm(4)));
  CHECK_FALSE(is_central(S4, parse_cycles("(1,2)", 4)));
  CHECK(is_central(V, parse_cycles("(1,2)(3,4)", 4)));
  try {
    is_normal(A4, T);
    FAIL("expected NotSubset");
  } catch (Error const& e) {
    CHECK(e.code() == errc::not_subset);
  }
  CHECK_THROWS_AS(is_central(A4, parse_cycles("(1,2)", 4)), Error);
}

TEST_CASE("normality agrees with a full conjugation scan") {
  auto const S4 = generate_group(4, {parse_cycles("(1,2)", 4), parse_cycles("(1,2,3,4)", 4)});
  for (auto const& g : S4.elements()) {
    auto const H = generate_group(4, {g});
    bool       naive = true;
    for (auto const& x : S4.elements()) {
      for (auto const& h : H.elements()) {
        naive = naive && H.contains(compose(compose(x, h), inverse(x)));
      }
    }
    CHECK(is_normal(S4, H) == naive);
  }
}

TEST_CASE("B inside Aut(L_C4) is normal and z is central in Half(L_C4)") {
  auto const b    = build_lm(AbelianSpec({4}));
  auto const maps = enumerate_closed(b);
  std::vector<Perm> aut, bb;
  for (auto const& h : maps) {
    if (h.kind == HalfKind::automorphism) {
      aut.push_back(h.perm);
      if (h.params->klein_aut == 0 && is_identity(h.params->m_aut)) {
        bb.push_back(h.perm);
      }
    }
  }
  auto const Aut  = PermGroup::from_elements(16, aut);
  auto const B    = PermGroup::from_elements(16, bb);
  auto const Half = PermGroup::from_elements(16, perms_of(maps));
  CHECK(B.size() == 4);
  CHECK(is_normal(Aut, B));
  Perm const z = closed_form(b, identity_params(b, Sign::minus));
  CHECK(is_central(Half, z));
  CHECK(perm_order(z) == 2);
}

TEST_CASE("group isomorphism witnesses") {
  auto const s3 = regular_representation(generalized_dihedral(AbelianSpec({3})));
  auto const S3 = generate_group(3, {parse_cycles("(1,2)", 3), parse_cycles("(1,2,3)", 3)});
  auto const p  = find_group_isomorphism(S3, s3);
  REQUIRE(p);
  CHECK(is_isomorphism(S3.cayley_table(), s3.cayley_table(), *p));
  auto const C6 = regular_representation(abelian_group(AbelianSpec({6})).table);
  CHECK_FALSE(find_group_isomorphism(S3, C6));
}

TEST_CASE("Aut(L_C3) is S3 x C2") {
  auto const b = build_lm(AbelianSpec({3}));
  std::vector<Perm> aut;
  for (auto const& h : enumerate_closed(b)) {
    if (h.kind == HalfKind::automorphism) {
      aut.push_back(h.perm);
    }
  }
  auto const A    = PermGroup::from_elements(12, aut);
  auto const s3c2 = direct_product({generalized_dihedral(AbelianSpec({3})), abelian_group(AbelianSpec({2})).table});
  CHECK(find_isomorphism(A.cayley_table(), s3c2.table).has_value());
  // Half is C2^2 x S3
  auto const H = PermGroup::from_elements(12, perms_of(enumerate_closed(b)));
  auto const v = direct_product({generalized_dihedral(AbelianSpec({3})), abelian_group(AbelianSpec({2, 2})).table});
  CHECK(find_isomorphism(H.cayley_table(), v.table).has_value());
}

TEST_CASE("verify_structure on L_C3") {
  auto const r = verify_structure(build_lm(AbelianSpec({3})));
  require_all_green(r);
  CHECK(r.all_passed());
  CHECK(r.aut_size == 12);
  CHECK(r.half_size == 24);
  CHECK(r.b_size == 1);
  CHECK(r.a_size == 12);
  CHECK(r.find("odd-order-form") != nullptr);
  CHECK(r.pairs_exhaustive);
}

TEST_CASE("verify_structure on L_C4") {
  auto const r = verify_structure(build_lm(AbelianSpec({4})));
  require_all_green(r);
  CHECK(r.aut_size == 48);
  CHECK(r.b_size == 4);
  CHECK(r.a_size == 12);
  CHECK(r.pairs_exhaustive);
  CHECK(r.pairs_checked == 96 * 96);
  CHECK(r.find("odd-order-form") == nullptr);
}

TEST_CASE("verify_structure on L_{C4 x C2}") {
  auto const r = verify_structure(build_lm(AbelianSpec({4, 2})));
  require_all_green(r);
  CHECK(r.aut_size == 768);
  CHECK(r.half_size == 1536);
  CHECK(r.b_size == 16);
  CHECK(r.a_size == 48);
  CHECK_FALSE(r.pairs_exhaustive);
  CHECK(r.pairs_checked >= 10000);
  // the pairing covers Aut(K) x Aut(M) once
  CHECK(r.pairing.size() == 48);
}

TEST_CASE("verify_structure with the brute-force cross-check") {
  StructureOptions opts;
  opts.bruteforce_crosscheck = true;
  auto const r = verify_structure(build_lm(AbelianSpec({6})), opts);
  require_all_green(r);
  REQUIRE(r.find("bruteforce-agrees"));
  CHECK(r.find("bruteforce-agrees")->passed);
}

TEST_CASE("verify_structure witnesses are checkable") {
  auto const b = build_lm(AbelianSpec({4, 2}));
  auto const r = verify_structure(b);
  auto const t = oracle::raw_of(b.table);
  CHECK(oracle::is_anti_automorphism(t, oracle::Map(r.central.begin(), r.central.end())) == false);
  for (auto const& p : r.b_group) {
    CHECK(oracle::is_automorphism(t, oracle::Map(p.begin(), p.end())));
    CHECK(is_identity(compose(p, p)));
  }
  for (auto const& [p, parts] : r.pairing) {
    CHECK(closed_form(b, HalfParams{Sign::plus, parts.first, parts.second, 0, 0}) == p);
  }
}

TEST_CASE("verify_structure refuses degenerate M") {
  try {
    verify_structure(build_lm(AbelianSpec({2, 2})));
    FAIL("expected DegenerateExponent");
  } catch (Error const& e) {
    CHECK(e.code() == errc::degenerate_exponent);
  }
}

TEST_CASE("structure holds for further small M") {
  for (auto const& spec : {AbelianSpec({5}), AbelianSpec({6}), AbelianSpec({8}), AbelianSpec({2, 2, 3})}) {
    INFO(spec.name());
    require_all_green(verify_structure(build_lm(spec)));
  }
}

TEST_CASE("classify works on the printed Bol table for group-closed products") {
  // products of two listed maps stay half-automorphisms of the printed table
  auto const L = bol12();
  auto const a = parse_cycles("( 2, 5)( 3, 6)( 7, 8)( 9,11)(10,12)", 12);
  auto const p = parse_cycles("( 3, 6)", 12);
  CHECK(classify(L, compose(a, p)).is_half());
  CHECK(classify(L, compose(p, p)).kind == HalfKind::automorphism);
}
