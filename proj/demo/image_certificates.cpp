// Bounded image membership next to the global non-membership certificates.
#include <iostream>

#include "derivkit/derivkit.hpp"

using namespace derivkit;

int main() {
  Derivation d = parse_derivation("deriv{x: y, y: x*y + 1}");
  Family fam = recognize_family(d);

  for (const char* t : {"1", "x"}) {
    MultiPoly target = parse_poly(t, d.vars());
    auto r = image_membership(d, target, 8);
    std::cout << t << ": ";
    if (const auto* m = std::get_if<Member>(&r)) {
      std::cout << "D(" << to_string(m->preimage) << ")\n";
    } else {
      std::cout << "no preimage of degree <= 8";
      auto cert = certified_nonmembership(fam, target);
      if (const auto* c = std::get_if<CertifiedNonMember>(&cert)) std::cout << ", never in the image [" << c->theorem << "]";
      std::cout << "\n";
    }
  }

  auto mz = decide_mz(fam);
  std::cout << "image is Mathieu-Zhao: " << (mz.mz ? "yes" : "no") << " [" << mz.theorem << "]\n";
}
