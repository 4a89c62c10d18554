#pragma once

#include <sstream>
#include <string>

#include "error.hpp"

namespace tgc {

struct TieredParams {
  int n1 = 0;
  int n2 = 0;
  int k = 0;
  int c = 1;

  bool operator==(const TieredParams&) const = default;
};

inline void validate(const TieredParams& p) {
  auto fail = [](const std::string& why) { throw invalid_parameters(why); };
  if (p.k < 1) fail("k < 1");
  if (p.n1 < p.k) fail("n1 < k");
  if (p.n2 < p.n1) fail("n2 < n1");
  if (p.c < 1) fail("c < 1");
  if (p.c >= p.k) fail("c >= k");
}

inline std::string to_string(const TieredParams& p) {
  std::ostringstream os;
  os << "(n1=" << p.n1 << ", n2=" << p.n2 << ", k=" << p.k << ", c=" << p.c << ")";
  return os.str();
}

}  // namespace tgc
