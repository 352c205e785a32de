// Tunnelling doublet of the (0,2) member: shooting energies, the matrix-oracle
// cross-check and the two lowest densities at a few points.

#include <cstdio>

#include "pdmwell/pdmwell.hpp"

int main() {
  using namespace pdmwell;
  const auto prob = make_problem(Member{0, 2}, -50.0);
  std::printf("well shape: %s\n", to_string(classify_well(prob)));

  const auto levels = find_spectrum(prob, 4);
  const auto oracle = oracle_spectrum_richardson(prob, 4);
  for (std::size_t i = 0; i < levels.size(); ++i)
    std::printf("n=%d %-4s E=%.12f  oracle %.8f\n", levels[i].n, to_string(levels[i].parity), levels[i].energy,
                oracle[i].energy);
  std::printf("doublet gap: %.6e\n", levels[1].energy - levels[0].energy);

  const auto even = eigenfunction_numeric(prob, levels[0]);
  const auto odd = eigenfunction_numeric(prob, levels[1]);
  for (std::size_t i = 0; i < even.grid_x.size(); i += 400)
    std::printf("x=%6.2f  |psi0|^2=%.6f  |psi1|^2=%.6f\n", even.grid_x[i], even.psi[i] * even.psi[i],
                odd.psi[i] * odd.psi[i]);
}
