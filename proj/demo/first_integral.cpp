// Searches for Darboux polynomials of y d/dx + ((x-1) y^2 + x y + 1) d/dy
// and audits the cofactor structure of each hit.
#include <iostream>

#include "derivkit/derivkit.hpp"

using namespace derivkit;

int main() {
  FamilyA fam{uni_from_dense({-1, 1}), uni_x(), uni_const(1)};
  auto verdict = decide_simple_family_a(fam);
  std::cout << "simple: " << (verdict.simple ? "yes" : "no") << " [" << verdict.theorem << "]\n";
  if (const auto* w = verdict.witness()) std::cout << "witness ideal: (" << to_string(w->generators[0]) << ")\n";

  auto outcome = darboux_search_family_a(fam, SearchBounds{2, 2, 3, 8});
  if (const auto* found = std::get_if<Found>(&outcome)) {
    for (const auto& hit : found->hits) {
      std::cout << "F = " << to_string(hit.pair.F) << ", cofactor = " << to_string(hit.pair.cofactor) << "\n";
      auto audit = audit_structure(fam, hit.pair);
      std::cout << "  structure: " << (std::holds_alternative<CofactorStructure>(audit) ? "ok" : "violated")
                << "\n";
    }
  } else {
    std::cout << "nothing found within bounds\n";
  }
}
