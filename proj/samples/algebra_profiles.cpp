// Measures commutativity, self-inverse, braid support and unbinding for every algebra
// and compares them with the expected profile.
#include <cstdio>
#include <string>

#include "hyperrig/hyperrig.hpp"

using namespace hyperrig;

int main(int argc, char** argv) {
  const std::size_t d = argc > 1 ? std::stoul(argv[1]) : 256;
  LawOptions opts;
  opts.trials = argc > 2 ? std::stoul(argv[2]) : 200;
  int mismatches = 0;
  std::printf("%-9s %-12s %-12s %-12s %-12s %s\n", "algebra", "commutative", "self-inv", "braid", "unbinding", "match");
  for (auto id : kAllAlgebras) {
    const std::size_t dim = id == AlgebraId::TPR ? 64 : d;
    const auto pc = check_profile(AlgebraParams::make(id, dim), opts);
    const auto& o = pc.observed;
    std::printf("%-9s %-12s %-12s %-12s %-12s %s\n", std::string(algebra_name(id)).c_str(), o.commutative ? "yes" : "no",
                o.self_inverse ? (*o.self_inverse ? "yes" : "no") : "-", o.braid_native ? "native" : "extension",
                unbind_kind_name(o.unbinding), pc.matches() ? "ok" : "MISMATCH");
    mismatches += pc.matches() ? 0 : 1;
  }
  return mismatches == 0 ? 0 : 1;
}
