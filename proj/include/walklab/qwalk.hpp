#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

// Discrete-time quantum walk on the integer line with a position-periodic
// coin: sites carrying the potential rotate the coin (Hadamard), the rest
// leave it alone (identity). Everything here is exact, deterministic linear
// algebra on double-precision amplitudes.
namespace qwalk {

using Complex = std::complex<double>;

// 2x2 unitary acting on the coin space.
struct CoinOperator {
    Complex e00, e01;
    Complex e10, e11;

    // max entry-wise deviation of C^dagger * C from the identity
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }

    // coin vector (a, b) -> C * (a, b)
    std::pair<Complex, Complex> apply(Complex a, Complex b) const {
        return {e00 * a + e01 * b, e10 * a + e11 * b};
    }
};

CoinOperator hadamard_coin(); // (1/sqrt(2)) [[1, 1], [1, -1]]
CoinOperator identity_coin();

// Periodic assignment of coins to lattice sites: coin1 on the first q sites
// of each period of length N, coin2 on the remaining N-q, with x = 0 at the
// middle of the first block. q must be odd so that middle exists; the
// resulting assignment is mirror-symmetric, coin_at(x) == coin_at(-x).
class PotentialProfile {
  public:
    // throws std::invalid_argument on non-unitary coins, q out of [1, N],
    // or even q
    PotentialProfile(const CoinOperator& coin1, int q, const CoinOperator& coin2, int period);

    const CoinOperator& coin_at(int x) const {
        int r = (x + (q_ - 1) / 2) % period_;
        if (r < 0) r += period_; // Euclidean mod, negative x included
        return r < q_ ? coin1_ : coin2_;
    }

    const CoinOperator& coin1() const { return coin1_; }
    const CoinOperator& coin2() const { return coin2_; }
    int q() const { return q_; }
    int period() const { return period_; }

  private:
    CoinOperator coin1_, coin2_;
    int q_;
    int period_;
};

enum class CaseLabel { IA, IB, IIA, IIB, IIIA, IIIB, Hadamard };

std::string to_string(CaseLabel label);
CaseLabel case_label_from_string(const std::string& name); // throws on unknown name

// One of the catalog walks. `size` is the period N for IA/IB/IIA/IIB and
// Hadamard, and the block length q for IIIA/IIIB (period 2q).
struct WalkCase {
    CaseLabel label;
    int size;
};

// IA:   [H:1,   I:N-1]   N >= 2
// IB:   [I:1,   H:N-1]   N >= 2
// IIA:  [H:N-1, I:1]     N even
// IIB:  [I:N-1, H:1]     N even
// IIIA: [H:q,   I:q]     q odd
// IIIB: [I:q,   H:q]     q odd
// Hadamard: H everywhere (the uniform-walk baseline)
PotentialProfile build_case(const WalkCase& walk_case);

// Walker amplitudes (A_x, B_x) for coin states |0>, |1> over a dense window
// of lattice sites. Support is exactly [-t, t] for a walk started at the
// origin; cells at the wrong parity stay bit-exact zero because the update
// never mixes parities.
class WalkerState {
  public:
    WalkerState() = default;

    // state localized at x = 0 with coin amplitudes (a0, b0); must be
    // normalized
    static WalkerState localized(Complex a0, Complex b0);

    // arbitrary window [window_min, window_min + a.size() - 1] at step t
    static WalkerState from_window(int step_t, int window_min,
                                   std::vector<Complex> a, std::vector<Complex> b);

    int step_t() const { return step_; }
    int window_min() const { return lo_; }
    int window_max() const { return hi_; }

    // A_x (coin |0>, the right-moving component); zero outside the window
    Complex amp0(int x) const { return inside(x) ? a_[x + radius_] : Complex{}; }
    // B_x (coin |1>, the left-moving component)
    Complex amp1(int x) const { return inside(x) ? b_[x + radius_] : Complex{}; }

    double norm_sq() const;

    // grow storage so `extra_steps` further steps need no reallocation
    void reserve_steps(int extra_steps);

  private:
    bool inside(int x) const { return x >= lo_ && x <= hi_; }

    // one step of src written into *this; storage must already be large
    // enough (see step()/evolve())
    void step_from(const WalkerState& src, const PotentialProfile& profile);

    friend WalkerState step(const WalkerState& state, const PotentialProfile& profile);
    friend WalkerState evolve(WalkerState state, const PotentialProfile& profile, int steps);

    std::vector<Complex> a_, b_; // indexed by x + radius_, covering [-radius_, radius_]
    int radius_ = 0;
    int step_ = 0;
    int lo_ = 0, hi_ = 0; // support window
};

// (|0> + i|1>)/sqrt(2) at the origin; gives a left-right symmetric walk for
// every mirror-symmetric profile
WalkerState symmetric_initial_state();

// one application of U = sum_x S_x (coin_at(x) ⊗ I): coin first, then the
// conditional shift (|0> one site right, |1> one site left)
WalkerState step(const WalkerState& state, const PotentialProfile& profile);

// U^t. Normalization is asserted every step in debug builds and checked
// every 100 steps otherwise.
WalkerState evolve(WalkerState state, const PotentialProfile& profile, int steps);

// p(x) = |A_x|^2 + |B_x|^2 for every x in the support window
using Distribution = std::vector<std::pair<int, double>>;
Distribution position_distribution(const WalkerState& state);

double mean_position(const Distribution& dist);     // <x>
double std_dev(const Distribution& dist);           // sqrt(<x^2>), not centered
double origin_probability(const WalkerState& state); // p(0, t)

} // namespace qwalk
