// Prints the zero-energy fraction and chi_bar for the three standard
// hopping models on a sun patch of the given depth (default 5).

#include <cstdio>
#include <cstdlib>

#include "penrose_ctqw/penrose_ctqw.hpp"

int main(int argc, char** argv) {
  using namespace penrose_ctqw;
  const int depth = argc > 1 ? std::atoi(argv[1]) : 5;
  const auto lattice = generate(depth);
  std::printf("depth %d, N = %zu\n", depth, lattice.size());

  for (const auto& model : {HoppingModel::edges_only(), HoppingModel::thin_near(), HoppingModel::thin_fat_near()}) {
    const auto spec = decompose(build(lattice, model));
    const auto r = efficiency_report(spec);
    std::printf("a=%g b=%g c=%g  D0/N=%.4f  chi_bar=%.5f  sqrt(chi_bar)=%.4f\n", model.a, model.b, model.c,
                r.d0_over_n, r.chi_bar, r.d0_upper_bound);
  }
}
