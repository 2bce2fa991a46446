#pragma once

// Reference data shared by the unit tests and the acceptance binary.

#include <array>
#include <string>
#include <vector>

#include "ohmlab/combinatorics.hpp"

namespace fixture {

// Projection matrix for four nodes in its reference row and column order:
// rows are the planar partitions, columns the same list followed by 13|24.
inline const std::vector<std::string> projection4_rows{
    "1|2|3|4", "12|3|4", "13|2|4", "14|2|3", "23|1|4", "24|1|3", "34|1|2",
    "12|34",   "14|23",  "1|234",  "2|134",  "3|124",  "4|123",  "1234"};
inline const std::vector<std::string> projection4_cols = [] {
  auto c = projection4_rows;
  c.push_back("13|24");
  return c;
}();
inline const std::array<int, 14> projection4_last_col{0, 0, 0, 0, 0, 0, 0, -1, -1, 1, 1, 1, 1, 0};

inline int projection4_entry(std::size_t r, std::size_t c) {
  if (c == 14) return projection4_last_col[r];
  return r == c ? 1 : 0;
}

// Compares the computed projection matrix against the table, matching rows
// and columns by partition; returns the number of mismatched entries (or -1
// when a partition is missing).
inline int projection4_mismatches(const ohmlab::ProjectionMatrix& pm) {
  using namespace ohmlab;
  auto find = [](const std::vector<Partition>& v, const std::string& s) {
    Partition p = canonical(parse_partition(s));
    for (std::size_t i = 0; i < v.size(); ++i)
      if (canonical(v[i]) == p) return static_cast<int>(i);
    return -1;
  };
  if (pm.rows.size() != projection4_rows.size()) return -1;
  int bad = 0;
  for (std::size_t r = 0; r < projection4_rows.size(); ++r) {
    int i = find(pm.rows, projection4_rows[r]);
    if (i < 0) return -1;
    for (std::size_t c = 0; c < projection4_cols.size(); ++c) {
      int j = find(pm.cols, projection4_cols[c]);
      if (j < 0) return -1;
      if (pm.p(i, j) != projection4_entry(r, c)) ++bad;
    }
  }
  return bad;
}

}  // namespace fixture
