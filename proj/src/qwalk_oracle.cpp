#include "walklab/qwalk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qwalk {

namespace {

// basis index of coin state c at site offset s = x + halfwidth
std::size_t basis_index(std::size_t site, int coin) { return 2 * site + coin; }

} // namespace

DenseOneStep::DenseOneStep(const PotentialProfile& profile, int halfwidth)
    : halfwidth_(halfwidth) {
    if (halfwidth < 0)
        throw std::invalid_argument("halfwidth must be >= 0");
    const std::size_t sites = 2 * static_cast<std::size_t>(halfwidth) + 1;
    dim_ = 2 * sites;
    u_.assign(dim_ * dim_, Complex{});
    for (std::size_t s = 0; s < sites; ++s) {
        const int x = static_cast<int>(s) - halfwidth;
        const CoinOperator& c = profile.coin_at(x);
        const std::size_t right = (s + 1) % sites;          // |0> moves to x+1
        const std::size_t left = (s + sites - 1) % sites;   // |1> moves to x-1
        u_[basis_index(right, 0) * dim_ + basis_index(s, 0)] = c.e00;
        u_[basis_index(right, 0) * dim_ + basis_index(s, 1)] = c.e01;
        u_[basis_index(left, 1) * dim_ + basis_index(s, 0)] = c.e10;
        u_[basis_index(left, 1) * dim_ + basis_index(s, 1)] = c.e11;
    }
}

double DenseOneStep::unitarity_defect() const {
    double defect = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            Complex g{};
            for (std::size_t k = 0; k < dim_; ++k)
                g += std::conj(u_[k * dim_ + i]) * u_[k * dim_ + j];
            if (i == j)
                g -= 1.0;
            defect = std::max(defect, std::abs(g));
        }
    }
    return defect;
}

void DenseOneStep::apply(std::vector<Complex>& v) const {
    if (v.size() != dim_)
        throw std::invalid_argument("state vector size does not match the lattice");
    std::vector<Complex> out(dim_, Complex{});
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex acc{};
        const Complex* row = &u_[r * dim_];
        for (std::size_t k = 0; k < dim_; ++k)
            acc += row[k] * v[k];
        out[r] = acc;
    }
    v = std::move(out);
}

WalkerState brute_force_oracle(const WalkerState& initial, const PotentialProfile& profile,
                               int steps, int halfwidth) {
    if (steps < 0)
        throw std::invalid_argument("step count must be >= 0");
    const int reach =
        steps + std::max(std::abs(initial.window_min()), std::abs(initial.window_max()));
    if (halfwidth < reach)
        throw std::invalid_argument("halfwidth too small: reachable support would be truncated");

    const DenseOneStep one_step(profile, halfwidth);
    std::vector<Complex> v(one_step.dim(), Complex{});
    for (int x = initial.window_min(); x <= initial.window_max(); ++x) {
        const std::size_t s = static_cast<std::size_t>(x + halfwidth);
        v[basis_index(s, 0)] = initial.amp0(x);
        v[basis_index(s, 1)] = initial.amp1(x);
    }
    for (int k = 0; k < steps; ++k)
        one_step.apply(v);

    const int lo = initial.window_min() - steps;
    const int hi = initial.window_max() + steps;
    std::vector<Complex> a, b;
    a.reserve(hi - lo + 1);
    b.reserve(hi - lo + 1);
    for (int x = lo; x <= hi; ++x) {
        const std::size_t s = static_cast<std::size_t>(x + halfwidth);
        a.push_back(v[basis_index(s, 0)]);
        b.push_back(v[basis_index(s, 1)]);
    }
    return WalkerState::from_window(initial.step_t() + steps, lo, std::move(a), std::move(b));
}

} // namespace qwalk
