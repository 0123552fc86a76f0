#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "halfloop/error.hpp"
#include "halfloop/perm.hpp"

namespace halfloop {

  // A finite loop given by its Cayley table over 0..n-1. Instances are
  // immutable once built and every constructor path validates the
  // quasigroup and identity axioms, so holding a LoopTable is proof that
  // both hold.
  class LoopTable {
   public:
    // Validates a row-major n*n table. Throws NotQuasigroup if some row or
    // column repeats an entry, NoIdentity if no element acts as a two-sided
    // identity.
    static LoopTable from_flat(std::size_t n, std::vector<Index> cells) {
      if (n == 0) {
        throw Error(errc::invalid_argument, "a loop has at least one element");
      }
      if (cells.size() != n * n) {
        throw Error(errc::invalid_argument,
                    "expected " + std::to_string(n * n) + " cells, got "
                        + std::to_string(cells.size()));
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] >= n) {
          throw Error(errc::not_quasigroup,
                      "entry " + std::to_string(cells[i]) + " at row "
                          + std::to_string(i / n) + ", column "
                          + std::to_string(i % n) + " is out of range");
        }
      }
      LoopTable L;
      L._n     = static_cast<Index>(n);
      L._cells = std::move(cells);
      L._ldiv.assign(n * n, 0);
      L._rdiv.assign(n * n, 0);
      std::vector<bool> seen(n);
      for (Index r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), false);
        for (Index c = 0; c < n; ++c) {
          Index v = L._cells[r * n + c];
          if (seen[v]) {
            throw Error(errc::not_quasigroup,
                        "row " + std::to_string(r) + " repeats entry "
                            + std::to_string(v));
          }
          seen[v]              = true;
          L._ldiv[r * n + v] = c;
        }
      }
      for (Index c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), false);
        for (Index r = 0; r < n; ++r) {
          Index v = L._cells[r * n + c];
          if (seen[v]) {
            throw Error(errc::not_quasigroup,
                        "column " + std::to_string(c) + " repeats entry "
                            + std::to_string(v));
          }
          seen[v]              = true;
          L._rdiv[c * n + v] = r;
        }
      }
      std::vector<Index> identities;
      for (Index e = 0; e < n; ++e) {
        bool ok = true;
        for (Index x = 0; x < n && ok; ++x) {
          ok = L._cells[e * n + x] == x && L._cells[x * n + e] == x;
        }
        if (ok) {
          identities.push_back(e);
        }
      }
      if (identities.empty()) {
        throw Error(errc::no_identity, "no two-sided identity element");
      }
      if (identities.size() > 1) {
        throw Error(errc::multiple_identities,
                    std::to_string(identities.size())
                        + " elements act as two-sided identities");
      }
      L._e = identities.front();
      return L;
    }

    Index order() const noexcept {
      return _n;
    }

    Index identity() const noexcept {
      return _e;
    }

    Index mul(Index x, Index y) const noexcept {
      return _cells[x * _n + y];
    }

    // The unique z with mul(a, z) == b.
    Index left_div(Index a, Index b) const noexcept {
      return _ldiv[a * _n + b];
    }

    // The unique z with mul(z, a) == b.
    Index right_div(Index a, Index b) const noexcept {
      return _rdiv[a * _n + b];
    }

    std::span<Index const> row(Index x) const noexcept {
      return {_cells.data() + x * _n, _n};
    }

    std::vector<Index> const& cells() const noexcept {
      return _cells;
    }

    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    // Display label of x, or its 1-based index when unlabelled.
    std::string label(Index x) const {
      if (x < _labels.size()) {
        return _labels[x];
      }
      return std::to_string(x + 1);
    }

    LoopTable with_labels(std::vector<std::string> labels) const {
      if (!labels.empty() && labels.size() != _n) {
        throw Error(errc::invalid_argument, "label count does not match order");
      }
      LoopTable out = *this;
      out._labels   = std::move(labels);
      return out;
    }

    bool same_table(LoopTable const& other) const noexcept {
      return _n == other._n && _cells == other._cells;
    }

    friend bool operator==(LoopTable const& a, LoopTable const& b) noexcept {
      return a.same_table(b);
    }

   private:
    LoopTable() = default;

    Index                    _n = 0;
    Index                    _e = 0;
    std::vector<Index>       _cells;
    std::vector<Index>       _ldiv;
    std::vector<Index>       _rdiv;
    std::vector<std::string> _labels;
  };

  inline LoopTable loop_from_table(std::vector<std::vector<Index>> const& matrix) {
    std::size_t const  n = matrix.size();
    std::vector<Index> cells;
    cells.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      if (matrix[r].size() != n) {
        throw Error(errc::invalid_argument,
                    "row " + std::to_string(r) + " has " + std::to_string(matrix[r].size())
                        + " entries, expected " + std::to_string(n));
      }
      cells.insert(cells.end(), matrix[r].begin(), matrix[r].end());
    }
    return LoopTable::from_flat(n, std::move(cells));
  }

  inline Index mul(LoopTable const& L, Index x, Index y) {
    return L.mul(x, y);
  }

  inline Index left_div(LoopTable const& L, Index a, Index b) {
    return L.left_div(a, b);
  }

  inline Index right_div(LoopTable const& L, Index a, Index b) {
    return L.right_div(a, b);
  }

  // x . y = y * x
  inline LoopTable opposite(LoopTable const& L) {
    Index const        n = L.order();
    std::vector<Index> cells(std::size_t(n) * n);
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        cells[x * n + y] = L.mul(y, x);
      }
    }
    return LoopTable::from_flat(n, std::move(cells)).with_labels(L.labels());
  }

  // Relabels L along the bijection p: the result has p(x) * p(y) = p(x * y).
  inline LoopTable relabel(LoopTable const& L, Perm const& p) {
    Index const        n = L.order();
    std::vector<Index> cells(std::size_t(n) * n);
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        cells[p[x] * n + p[y]] = p[L.mul(x, y)];
      }
    }
    return LoopTable::from_flat(n, std::move(cells));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format: line 1 holds n, then n rows of n whitespace-separated
  // 1-based entries. Row i, column j holds i*j and element 1 must be the
  // identity.
  ////////////////////////////////////////////////////////////////////////

  inline LoopTable read_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto        fail    = [&](std::size_t col, std::string const& why) -> Error {
      return Error(errc::parse_error,
                   "line " + std::to_string(line_no) + ", column "
                       + std::to_string(col) + ": " + why);
    };
    auto next_content_line = [&]() -> bool {
      while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
          return true;
        }
      }
      return false;
    };
    if (!next_content_line()) {
      throw Error(errc::parse_error, "empty input, expected the order n");
    }
    std::size_t n = 0;
    {
      std::istringstream ss(line);
      long long          v;
      if (!(ss >> v) || v <= 0) {
        throw fail(1, "expected a positive order");
      }
      std::string rest;
      if (ss >> rest) {
        throw fail(1, "trailing text after the order");
      }
      n = static_cast<std::size_t>(v);
    }
    std::vector<Index> cells;
    cells.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!next_content_line()) {
        throw Error(errc::parse_error,
                    "unexpected end of input: read " + std::to_string(r) + " of "
                        + std::to_string(n) + " rows");
      }
      std::size_t pos = 0, col = 0;
      while (true) {
        pos = line.find_first_not_of(" \t\r", pos);
        if (pos == std::string::npos) {
          break;
        }
        std::size_t end = line.find_first_of(" \t\r", pos);
        std::string tok = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        ++col;
        long long v = 0;
        try {
          std::size_t used = 0;
          v                = std::stoll(tok, &used);
          if (used != tok.size()) {
            throw fail(pos + 1, "'" + tok + "' is not an integer");
          }
        } catch (std::logic_error const&) {
          throw fail(pos + 1, "'" + tok + "' is not an integer");
        }
        if (v < 1 || static_cast<std::size_t>(v) > n) {
          throw fail(pos + 1, "entry " + tok + " outside 1.." + std::to_string(n));
        }
        if (col > n) {
          throw fail(pos + 1, "more than " + std::to_string(n) + " entries in row");
        }
        cells.push_back(static_cast<Index>(v - 1));
        if (end == std::string::npos) {
          break;
        }
        pos = end;
      }
      if (col != n) {
        throw fail(1, "row has " + std::to_string(col) + " entries, expected "
                          + std::to_string(n));
      }
    }
    LoopTable L = LoopTable::from_flat(n, std::move(cells));
    if (L.identity() != 0) {
      throw Error(errc::parse_error,
                  "element 1 must be the identity, found "
                      + std::to_string(L.identity() + 1));
    }
    return L;
  }

  inline LoopTable parse_table(std::string const& text) {
    std::istringstream in(text);
    return read_table(in);
  }

  // Writes the 1-based text format. Callers wanting element 1 to be the
  // identity should build tables whose identity is index 0, as every
  // constructor in this library does.
  inline void write_table(std::ostream& out, LoopTable const& L) {
    Index const       n     = L.order();
    std::size_t const width = std::to_string(n).size();
    out << n << '\n';
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        std::string v = std::to_string(L.mul(x, y) + 1);
        if (y != 0) {
          out << ' ';
        }
        out << std::string(width - v.size(), ' ') << v;
      }
      out << '\n';
    }
  }

  inline std::string format_table(LoopTable const& L) {
    std::ostringstream out;
    write_table(out, L);
    return out.str();
  }

}  // namespace halfloop
