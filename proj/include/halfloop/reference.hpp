#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "halfloop/abelian.hpp"
#include "halfloop/construction.hpp"
#include "halfloop/halfmorph.hpp"
#include "halfloop/isomorphism.hpp"
#include "halfloop/loop_table.hpp"
#include "halfloop/perm.hpp"

// Comparison against the reference output shipped in fixtures/:
//   bol12_table.txt            Cayley table of RightBolLoop(12,3)
//   bol12_automorphisms.txt    its 12 automorphisms, one per line
//   bol12_proper.txt           its 12 proper half-automorphisms
//   c4xc2_table.txt            Cayley table of SmallGroup(8,2)
//   c4xc2_proper_witness.txt   a proper half-automorphism of L_{C4 x C2}
//                              written with labels (A,k), k numbering the
//                              rows of c4xc2_table.txt

namespace halfloop {

  inline std::string read_fixture(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(errc::fixture_missing, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline LoopTable load_table(std::filesystem::path const& path) {
    std::istringstream in(read_fixture(path));
    try {
      return read_table(in);
    } catch (Error const& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
  }

  // One permutation per nonblank line, in cycle notation.
  inline std::vector<Perm> load_perm_list(std::filesystem::path const& path, std::size_t n) {
    std::istringstream in(read_fixture(path));
    std::vector<Perm>  out;
    std::string        line;
    std::size_t        lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      try {
        out.push_back(parse_cycles(line, n));
      } catch (Error const& e) {
        throw Error(errc::parse_error,
                    path.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    return out;
  }

  // Cycles over labels "(A,k)" with A in {1,a,b,c} and k a 1-based element
  // label of M. `binding[k-1]` is the M index that label k stands for.
  inline Perm parse_labeled_cycles(std::string_view          text,
                                   ConstructionBundle const& b,
                                   std::vector<Index> const& binding) {
    Index const n = b.table.order();
    Perm        p = identity_perm(n);
    std::vector<bool> used(n, false);
    std::size_t pos = 0;
    auto fail = [&](std::string const& why) {
      throw Error(errc::parse_error,
                  "labeled cycle at offset " + std::to_string(pos) + ": " + why);
    };
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    auto expect = [&](char c) {
      skip_ws();
      if (pos >= text.size() || text[pos] != c) {
        fail(std::string("expected '") + c + "'");
      }
      ++pos;
    };
    auto label = [&]() -> Index {
      expect('(');
      skip_ws();
      if (pos >= text.size()) {
        fail("unexpected end");
      }
      auto const k = std::string_view("1abc").find(text[pos]);
      if (k == std::string_view::npos) {
        fail("Klein label must be one of 1, a, b, c");
      }
      ++pos;
      expect(',');
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (start == pos) {
        fail("expected an element number");
      }
      std::size_t const m = std::stoul(std::string(text.substr(start, pos - start)));
      if (m < 1 || m > binding.size()) {
        fail("element number " + std::to_string(m) + " out of range");
      }
      expect(')');
      return b.index_of(static_cast<Klein>(k), binding[m - 1]);
    };
    skip_ws();
    while (pos < text.size()) {
      expect('(');
      std::vector<Index> cyc{label()};
      skip_ws();
      while (pos < text.size() && text[pos] == ',') {
        ++pos;
        cyc.push_back(label());
        skip_ws();
      }
      expect(')');
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (used[cyc[i]]) {
          fail("point " + b.label(cyc[i]) + " repeated");
        }
        used[cyc[i]] = true;
        p[cyc[i]]    = cyc[(i + 1) % cyc.size()];
      }
      skip_ws();
    }
    return p;
  }

  struct Bol12Comparison {
    bool              isomorphic = false;
    Perm              iso;  // constructed L_{C3} -> printed table
    std::vector<Perm> listed_auts, listed_proper;
    std::vector<Perm> computed_auts, computed_proper;  // transported, sorted
    bool              auts_match   = false;
    bool              proper_match = false;
    std::size_t       listed_classified_ok = 0;  // listed maps whose kind agrees on the fixture
  };

  // Computes Half(L_{C3}) with `half` (closed form or brute force), moves it
  // to the printed table along a computed isomorphism, and compares with
  // the printed lists as sets.
  inline Bol12Comparison compare_bol12(std::filesystem::path const& dir,
                                       std::vector<HalfMap> const&   half,
                                       ConstructionBundle const&     b) {
    Bol12Comparison c;
    auto const      printed = load_table(dir / "bol12_table.txt");
    c.listed_auts           = load_perm_list(dir / "bol12_automorphisms.txt", printed.order());
    c.listed_proper         = load_perm_list(dir / "bol12_proper.txt", printed.order());
    for (auto const& f : c.listed_auts) {
      c.listed_classified_ok += classify(printed, f).kind == HalfKind::automorphism;
    }
    for (auto const& f : c.listed_proper) {
      c.listed_classified_ok += classify(printed, f).kind == HalfKind::proper;
    }
    auto iso = find_isomorphism(b.table, printed);
    if (!iso) {
      return c;
    }
    c.isomorphic = true;
    c.iso        = *iso;
    for (auto const& h : half) {
      Perm t = conjugate_by(c.iso, h.perm);
      (h.kind == HalfKind::automorphism ? c.computed_auts : c.computed_proper).push_back(std::move(t));
    }
    std::sort(c.computed_auts.begin(), c.computed_auts.end());
    std::sort(c.computed_proper.begin(), c.computed_proper.end());
    auto listed_a = c.listed_auts, listed_p = c.listed_proper;
    std::sort(listed_a.begin(), listed_a.end());
    std::sort(listed_p.begin(), listed_p.end());
    c.auts_match   = listed_a == c.computed_auts;
    c.proper_match = listed_p == c.computed_proper;
    return c;
  }

  struct WitnessBinding {
    std::vector<Index> binding;  // label k -> M index
    Perm               perm;
    Classification     cls;
    bool               moves_klein = false;
    std::optional<HalfParams> params;
  };

  struct C4xC2Witness {
    bool                        table_matches_m = false;  // printed table = C4 x C2
    std::vector<WitnessBinding> bindings;
    // every binding classifies the map as proper and moves (K,1)
    bool all_proper_moving = false;
    // all bindings give the same verdict, so the label ambiguity is harmless
    bool unambiguous = false;
  };

  // The printed labels fix M only up to Aut(M), so every isomorphism from
  // the printed table onto our C4 x C2 is tried as a binding.
  inline C4xC2Witness check_c4xc2_witness(std::filesystem::path const& dir,
                                          ConstructionBundle const&     b) {
    C4xC2Witness w;
    auto const   printed = load_table(dir / "c4xc2_table.txt");
    auto const   text    = read_fixture(dir / "c4xc2_proper_witness.txt");
    auto const   isos    = all_isomorphisms(printed, b.m.table);
    w.table_matches_m    = !isos.empty();
    for (auto const& phi : isos) {
      WitnessBinding wb;
      wb.binding     = phi;
      wb.perm        = parse_labeled_cycles(text, b, phi);
      wb.cls         = classify(b.table, wb.perm);
      wb.moves_klein = image_of(wb.perm, b.klein_subloop) != b.klein_subloop;
      wb.params      = decode_params(b, wb.perm);
      w.bindings.push_back(std::move(wb));
    }
    auto good = [](WitnessBinding const& x) {
      return x.cls.kind == HalfKind::proper && x.moves_klein;
    };
    w.all_proper_moving = w.table_matches_m && std::all_of(w.bindings.begin(), w.bindings.end(), good);
    w.unambiguous = w.table_matches_m
                    && std::all_of(w.bindings.begin(), w.bindings.end(), [&](auto const& x) {
                         return good(x) == good(w.bindings.front());
                       });
    return w;
  }

}  // namespace halfloop
