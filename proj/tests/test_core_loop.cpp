#include <catch_amalgamated.hpp>

#include <random>

#include "halfloop/halfloop.hpp"
#include "oracles.hpp"

using namespace halfloop;

namespace {

  LoopTable cyclic(Index n) {
    return abelian_group(AbelianSpec({n})).table;
  }

  LoopTable bol12() {
    return load_table(std::filesystem::path(HALFLOOP_FIXTURE_DIR) / "bol12_table.txt");
  }

  // smallest loop with x(xx) != (xx)x for some x
  LoopTable not_power_associative() {
    return loop_from_table({{0, 1, 2, 3, 4},
                            {1, 0, 3, 4, 2},
                            {2, 3, 4, 0, 1},
                            {3, 4, 1, 2, 0},
                            {4, 2, 0, 1, 3}});
  }

  std::vector<Index> to_index(std::vector<int> const& v) {
    return {v.begin(), v.end()};
  }

  Error error_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e;
    }
    FAIL("no halfloop::Error thrown");
    throw std::logic_error("unreachable");
  }

}  // namespace

TEST_CASE("loop_from_table accepts the singleton loop") {
  auto L = loop_from_table({{0}});
  CHECK(L.order() == 1);
  CHECK(L.identity() == 0);
}

TEST_CASE("loop_from_table rejects a repeated entry and names the row") {
  auto e = error_of([] { loop_from_table({{0, 1}, {1, 1}}); });
  CHECK(e.code() == errc::not_quasigroup);
  CHECK(std::string(e.what()).find("row 1") != std::string::npos);
}

TEST_CASE("loop_from_table reports a repeated column entry") {
  // rows are permutations, column 0 repeats 0
  auto e = error_of([] { loop_from_table({{0, 1}, {0, 1}}); });
  CHECK(e.code() == errc::not_quasigroup);
  CHECK(std::string(e.what()).find("column 0") != std::string::npos);
}

TEST_CASE("loop_from_table requires a two-sided identity") {
  // a Latin square with no identity element
  auto e = error_of([] { loop_from_table({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}); });
  CHECK(e.code() == errc::no_identity);
}

TEST_CASE("loop_from_table rejects ragged and out-of-range input") {
  CHECK(error_of([] { loop_from_table({{0, 1}, {1}}); }).code() == errc::invalid_argument);
  CHECK(error_of([] { loop_from_table({{0, 2}, {1, 0}}); }).code() == errc::not_quasigroup);
  CHECK(error_of([] { loop_from_table({}); }).code() == errc::invalid_argument);
}

TEST_CASE("the 12-element Bol table loads with identity 1") {
  auto L = bol12();
  CHECK(L.order() == 12);
  CHECK(L.identity() == 0);
  // row 7, column 3 holds 11 (1-based)
  CHECK(mul(L, 6, 2) == 10);
}

TEST_CASE("divisions solve ax = b and ya = b") {
  for (auto const& L : {bol12(), cyclic(7), build_lm(AbelianSpec({4})).table}) {
    auto const t = oracle::raw_of(L);
    for (Index x = 0; x < L.order(); ++x) {
      CHECK(mul(L, L.identity(), x) == x);
      for (Index y = 0; y < L.order(); ++y) {
        CHECK(left_div(L, x, mul(L, x, y)) == y);
        CHECK(right_div(L, y, mul(L, x, y)) == x);
        CHECK(t[x][left_div(L, x, y)] == static_cast<int>(y));
        CHECK(t[right_div(L, x, y)][x] == static_cast<int>(y));
      }
    }
  }
}

TEST_CASE("every row and column of a validated table is a permutation") {
  for (auto const& L : {bol12(), build_lm(AbelianSpec({4, 2})).table, not_power_associative()}) {
    auto const n = L.order();
    for (Index i = 0; i < n; ++i) {
      std::vector<Index> row(n), col(n);
      for (Index j = 0; j < n; ++j) {
        row[j] = L.mul(i, j);
        col[j] = L.mul(j, i);
      }
      CHECK(is_permutation(row));
      CHECK(is_permutation(col));
    }
  }
}

TEST_CASE("L_C3 is right Bol, not left Bol, not Moufang") {
  auto const L = build_lm(AbelianSpec({3})).table;
  auto const r = check_identities(L);
  CHECK(r.right_bol.holds);
  CHECK_FALSE(r.left_bol.holds);
  CHECK_FALSE(r.moufang.holds);
  CHECK_FALSE(r.associative.holds);
  CHECK_FALSE(r.commutative.holds);
  CHECK(r.power_associative.holds);
  REQUIRE(r.left_bol.witness);
  auto [x, y, z] = *r.left_bol.witness;
  CHECK(L.mul(L.mul(x, L.mul(y, x)), z) != L.mul(x, L.mul(y, L.mul(x, z))));
  CHECK(oracle::right_bol(oracle::raw_of(L)));
  CHECK_FALSE(oracle::left_bol(oracle::raw_of(L)));
}

TEST_CASE("groups satisfy every identity") {
  for (auto const& G : {cyclic(4), cyclic(6), generalized_dihedral(AbelianSpec({3}))}) {
    auto const r = check_identities(G);
    CHECK(r.right_bol.holds);
    CHECK(r.left_bol.holds);
    CHECK(r.moufang.holds);
    CHECK(r.associative.holds);
    CHECK(r.power_associative.holds);
    CHECK(r.flexible.holds);
  }
  CHECK(check_identities(cyclic(4)).commutative.holds);
  auto const s3 = check_identities(generalized_dihedral(AbelianSpec({3})));
  CHECK_FALSE(s3.commutative.holds);
  REQUIRE(s3.commutative.witness);
}

TEST_CASE("identity flags agree with naive triple scans") {
  for (auto const& L : {bol12(), not_power_associative(), build_lm(AbelianSpec({4})).table,
                        opposite(build_lm(AbelianSpec({3})).table), cyclic(5)}) {
    auto const t = oracle::raw_of(L);
    auto const r = check_identities(L);
    CHECK(r.right_bol.holds == oracle::right_bol(t));
    CHECK(r.left_bol.holds == oracle::left_bol(t));
    CHECK(r.associative.holds == oracle::associative(t));
    CHECK(r.commutative.holds == oracle::commutative(t));
    CHECK(r.moufang.holds == (r.right_bol.holds && r.left_bol.holds));
    if (r.associative.holds) {
      CHECK(r.right_bol.holds);
      CHECK(r.left_bol.holds);
    }
  }
}

TEST_CASE("the witness is the lexicographically least failing triple") {
  auto const L = build_lm(AbelianSpec({3})).table;
  auto const t = oracle::raw_of(L);
  auto const r = check_identities(L);
  REQUIRE(r.associative.witness);
  oracle::Tup first;
  oracle::all_triples(t, [&](int x, int y, int z) {
    if (t[t[x][y]][z] != t[x][t[y][z]]) {
      first = {x, y, z};
      return false;
    }
    return true;
  });
  auto [x, y, z] = *r.associative.witness;
  CHECK(oracle::Tup{int(x), int(y), int(z)} == first);
}

TEST_CASE("element orders in L_C3") {
  auto const b = build_lm(AbelianSpec({3}));
  CHECK(element_order(b.table, b.table.identity()) == 1);
  for (Klein A : {Klein::a, Klein::b, Klein::c}) {
    for (Index x = 0; x < 3; ++x) {
      CHECK(element_order(b.table, b.index_of(A, x)) == 2);
    }
  }
  CHECK(element_order(b.table, b.index_of(Klein::one, 1)) == 3);
  CHECK(element_order(b.table, b.index_of(Klein::one, 2)) == 3);
}

TEST_CASE("element_order rejects a loop that is not power associative") {
  auto const L = not_power_associative();
  CHECK_FALSE(is_power_associative(L));
  CHECK_FALSE(check_identities(L).power_associative.holds);
  CHECK(error_of([&] { element_order(L, 2); }).code() == errc::not_power_associative);
  // element 1 squares to the identity and is unaffected
  CHECK(element_order(L, 1) == 2);
}

TEST_CASE("element orders agree with repeated multiplication") {
  for (auto const& L : {bol12(), build_lm(AbelianSpec({4, 2})).table, cyclic(6)}) {
    auto const t = oracle::raw_of(L);
    for (Index x = 0; x < L.order(); ++x) {
      CHECK(element_order(L, x) == static_cast<Index>(oracle::order_of(t, x)));
    }
  }
}

TEST_CASE("nuclei of a group are everything and the center is the commutant") {
  auto const G = generalized_dihedral(AbelianSpec({4}));
  auto const r = nuclei(G);
  CHECK(r.left.size() == 8);
  CHECK(r.middle.size() == 8);
  CHECK(r.right.size() == 8);
  CHECK(r.nucleus.size() == 8);
  CHECK(r.center == r.commutant);
  CHECK(r.center.size() == 2);  // D(C4) = D8 has center of order 2
}

TEST_CASE("nuclei of L_C3") {
  auto const r = nuclei(build_lm(AbelianSpec({3})).table);
  CHECK(r.left.size() == 4);
  CHECK(r.middle.size() == 3);
  CHECK(r.right.size() == 3);
  CHECK(r.nucleus.size() == 1);
  CHECK(r.commutant.size() == 1);
  CHECK(r.center.size() == 1);
}

TEST_CASE("nuclei of L_C4: middle and right nucleus are (1,M)") {
  auto const b = build_lm(AbelianSpec({4}));
  auto const r = nuclei(b.table);
  CHECK(r.middle == b.m_subgroup);
  CHECK(r.right == b.m_subgroup);
}

TEST_CASE("nuclei agree with the naive scan and are subloops") {
  for (auto const& L : {bol12(), build_lm(AbelianSpec({4, 2})).table, not_power_associative()}) {
    auto const o = oracle::nuclei(oracle::raw_of(L));
    auto const r = nuclei(L);
    CHECK(r.left == to_index(o.left));
    CHECK(r.middle == to_index(o.middle));
    CHECK(r.right == to_index(o.right));
    CHECK(r.nucleus == to_index(o.nucleus));
    CHECK(r.commutant == to_index(o.commutant));
    CHECK(r.center == to_index(o.center));
    for (auto const* S : {&r.left, &r.middle, &r.right, &r.nucleus, &r.center}) {
      CHECK(is_subloop(L, *S));
    }
    CHECK(std::includes(r.commutant.begin(), r.commutant.end(), r.center.begin(), r.center.end()));
    CHECK(std::includes(r.nucleus.begin(), r.nucleus.end(), r.center.begin(), r.center.end()));
  }
}

TEST_CASE("subloop_generated") {
  auto const L = build_lm(AbelianSpec({3})).table;
  CHECK(subloop_generated(L, {L.identity()}) == std::vector<Index>{0});
  CHECK(subloop_generated(L, {1}) == std::vector<Index>{0, 1, 2});
  // (a,0) and (b,0) generate (K,1)
  CHECK(subloop_generated(L, {3, 6}) == std::vector<Index>{0, 3, 6, 9});
  // (1,1) and (a,0) give {1,a} x M
  CHECK(subloop_generated(L, {1, 3}).size() == 6);
  CHECK(subloop_generated(L, {1, 3, 6}).size() == 12);
  for (Index x = 0; x < L.order(); ++x) {
    for (Index y = x; y < L.order(); ++y) {
      auto const S = subloop_generated(L, {x, y});
      CHECK(is_subloop(L, S));
      CHECK(std::binary_search(S.begin(), S.end(), x));
      CHECK(std::binary_search(S.begin(), S.end(), y));
    }
  }
}

TEST_CASE("L_C3 has exactly one subloop of order 4, namely (K,1)") {
  auto const b    = build_lm(AbelianSpec({3}));
  auto const subs = all_subloops_of_order(b.table, 4);
  REQUIRE(subs.size() == 1);
  CHECK(subs.front() == b.klein_subloop);
}

TEST_CASE("order-4 subloops agree with the naive 4-subset scan") {
  for (auto const& spec : {AbelianSpec({3}), AbelianSpec({4}), AbelianSpec({4, 2}), AbelianSpec({6})}) {
    auto const L = build_lm(spec).table;
    auto const o = oracle::subloops_of_order_4(oracle::raw_of(L));
    std::vector<std::vector<Index>> expect;
    for (auto const& S : o) {
      expect.push_back(to_index(S));
    }
    std::sort(expect.begin(), expect.end());
    CHECK(all_subloops_of_order(L, 4) == expect);
  }
}

TEST_CASE("all_subloops_of_order finds subloops needing three generators") {
  // C2^3 inside L_{C2 x C2}, which is elementary abelian of order 16
  auto const L = build_lm(AbelianSpec({2, 2})).table;
  // an elementary abelian group of order 16 has 15 subgroups of order 8
  CHECK(all_subloops_of_order(L, 8).size() == 15);
  CHECK(all_subloops_of_order(L, 16).size() == 1);
  CHECK(all_subloops_of_order(L, 1).size() == 1);
  CHECK(all_subloops_of_order(L, 3).empty());
}

TEST_CASE("opposite swaps left and right Bol") {
  for (auto const& L : {build_lm(AbelianSpec({3})).table, build_lm(AbelianSpec({4})).table, bol12()}) {
    auto const r  = check_identities(L);
    auto const ro = check_identities(opposite(L));
    CHECK(r.right_bol.holds == ro.left_bol.holds);
    CHECK(r.left_bol.holds == ro.right_bol.holds);
    CHECK(opposite(opposite(L)) == L);
  }
  CHECK(check_identities(opposite(build_lm(AbelianSpec({3})).table)).left_bol.holds);
  CHECK(opposite(cyclic(5)) == cyclic(5));
}

TEST_CASE("find_isomorphism of a loop with itself") {
  auto const L = build_lm(AbelianSpec({3})).table;
  auto const p = find_isomorphism(L, L);
  REQUIRE(p);
  CHECK(is_isomorphism(L, L, *p));
}

TEST_CASE("constructed L_C3 is isomorphic to the 12-element Bol table") {
  auto const L = build_lm(AbelianSpec({3})).table;
  auto const F = bol12();
  auto const p = find_isomorphism(L, F);
  REQUIRE(p);
  auto const t = oracle::raw_of(L), u = oracle::raw_of(F);
  for (Index x = 0; x < 12; ++x) {
    for (Index y = 0; y < 12; ++y) {
      CHECK(u[(*p)[x]][(*p)[y]] == static_cast<int>((*p)[t[x][y]]));
    }
  }
  // orders are invariant under the isomorphism
  for (Index x = 0; x < 12; ++x) {
    CHECK(element_order(L, x) == element_order(F, (*p)[x]));
  }
}

TEST_CASE("L_C3 is not isomorphic to C12") {
  CHECK_FALSE(find_isomorphism(build_lm(AbelianSpec({3})).table, cyclic(12)));
  CHECK_FALSE(find_isomorphism(cyclic(4), abelian_group(AbelianSpec({2, 2})).table));
  CHECK_FALSE(find_isomorphism(cyclic(4), cyclic(5)));
}

TEST_CASE("relabelled loops are found isomorphic with all isomorphisms enumerated") {
  auto const L = build_lm(AbelianSpec({4})).table;
  Perm       p = identity_perm(L.order());
  std::mt19937 rng(7);
  std::shuffle(p.begin() + 1, p.end(), rng);
  auto const R = relabel(L, p);
  auto const q = find_isomorphism(L, R);
  REQUIRE(q);
  CHECK(is_isomorphism(L, R, *q));
  // isomorphisms L -> R are a coset of Aut(L): as many as automorphisms
  auto const isos = all_isomorphisms(L, R);
  auto const auts = oracle::automorphisms(oracle::raw_of(L));
  CHECK(isos.size() == auts.size());
  for (auto const& f : isos) {
    CHECK(is_isomorphism(L, R, f));
  }
}

TEST_CASE("table text format round-trips and reports positions") {
  auto const L = build_lm(AbelianSpec({4})).table;
  CHECK(parse_table(format_table(L)) == L);
  auto e = error_of([] { parse_table("2\n1 2\n2 x\n"); });
  CHECK(e.code() == errc::parse_error);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  CHECK(error_of([] { parse_table("2\n1 2\n2 3\n"); }).code() == errc::parse_error);
  CHECK(error_of([] { parse_table("2\n1 2\n"); }).code() == errc::parse_error);
  CHECK(error_of([] { parse_table("2\n1 2\n1 2\n"); }).code() == errc::not_quasigroup);
  // identity present but not element 1
  CHECK(error_of([] { parse_table("2\n2 1\n1 2\n"); }).code() == errc::parse_error);
}

TEST_CASE("cycle notation") {
  CHECK(to_cycle_string(identity_perm(12)) == "()");
  auto const p = parse_cycles("( 2, 5)( 3, 6)( 7, 8)( 9,11)(10,12)", 12);
  CHECK(to_cycle_string(p) == "( 2, 5)( 3, 6)( 7, 8)( 9,11)(10,12)");
  CHECK(p[1] == 4);
  CHECK(is_identity(parse_cycles("I_d", 12)));
  CHECK(parse_cycles("(2,5)(3,6)", 6) == parse_cycles("( 3, 6)( 5, 2)", 6));
  CHECK(error_of([] { parse_cycles("(1,13)", 12); }).code() == errc::parse_error);
  CHECK(error_of([] { parse_cycles("(1,2)(2,3)", 12); }).code() == errc::parse_error);
  CHECK(error_of([] { parse_cycles("(1,2", 12); }).code() == errc::parse_error);
}
