#pragma once

#include <cstddef>
#include <vector>

#include "walklab/qwalk.hpp"

namespace qwalk {

// Independent check of the streaming evolution: the full one-step operator is
// materialized as a dense matrix straight from the definitions of the shift
// and the coin assignment, and applied by repeated matrix-vector products.
// Sites live on the ring [-halfwidth, halfwidth] (periodic wrap keeps the
// matrix unitary); as long as the walker's support never reaches the rim the
// wrap is inert and the result equals the infinite-line walk.
class DenseOneStep {
  public:
    DenseOneStep(const PotentialProfile& profile, int halfwidth);

    std::size_t dim() const { return dim_; }
    int halfwidth() const { return halfwidth_; }

    // max entry-wise deviation of U^dagger * U from the identity
    double unitarity_defect() const;

    // v <- U v; v.size() must equal dim()
    void apply(std::vector<Complex>& v) const;

  private:
    int halfwidth_;
    std::size_t dim_;
    std::vector<Complex> u_; // row-major dim x dim
};

// Evolves `initial` for `steps` steps through the dense matrix. Rejects a
// halfwidth too small to hold the reachable support without truncation.
// Agrees with evolve() to 1e-12 per amplitude.
WalkerState brute_force_oracle(const WalkerState& initial, const PotentialProfile& profile,
                               int steps, int halfwidth);

} // namespace qwalk
