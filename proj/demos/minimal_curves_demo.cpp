// Walks through the main constructions on small matrices.

#include <cstdio>

#include "mingeo/mingeo.hpp"

using namespace mingeo;

int main() {
  const SchattenIndex inf = SchattenIndex::inf(), one = SchattenIndex::of(1);

  // A detour between I and e^{i diag(2, 0.5)} that is as short as the geodesic.
  RealVector x(2);
  x << 2.0, 0.5;
  const UnitaryMatrix target = expi(HermitianMatrix::diagonal(x));
  const SampledCurve detour = sample(minimal_family_unitary(target, {7, FamilyMode::Detour, 0.8, std::nullopt}), 2048);
  std::printf("unitary detour   length %.6f  distance %.6f\n", length(detour, inf).length,
              dist_unitary(UnitaryMatrix::identity(2), target, inf));

  // -I is reached by two different minimal curves.
  const UniquenessCertificate cert = is_unique_minimal_unitary(UnitaryMatrix::identity(2), UnitaryMatrix::trusted(-identity(2)));
  std::printf("I to -I unique   %s\n", cert.unique ? "yes" : "no");

  // Trace-norm minimal chain 0 -> D in H(3) and its lifts.
  Rng rng(11);
  const HermitianMatrix d = random_hermitian_with_norm(rng, 3, 2.5);
  const SampledCurve chain = sample(minimal_family_hermitian(d, 11, 3), 512);
  const MinimalityVerdict v = is_minimal_hermitian_trace(chain);
  std::printf("hermitian chain  length %.9f  ||D||_1 %.9f  %s\n", length(chain, one).length, schatten_norm(d.mat(), one),
              v.supported ? "SUPPORTED" : "REFUTED");
  std::printf("  unitary lift   length %.6f\n", length(lift_unitary(chain), one).length);
  std::printf("  positive lift  length %.6f\n", length(lift_positive(chain), one).length);

  // Intermediate points of (I, -I) are not geodesically convex.
  const AntipodalCounterexample ce = antipodal_counterexample(2, 0.25);
  std::printf("antipodal midpoint residual %.6f\n", ce.residual);
  return 0;
}
