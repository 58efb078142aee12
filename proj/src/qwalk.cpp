#include "walklab/qwalk.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kNormGuardTol = 1e-9; // runtime guard, far looser than the 1e-12 invariant

double entry_abs(Complex z) { return std::abs(z); }

} // namespace

double CoinOperator::unitarity_defect() const {
    // rows of C^dagger are the conjugated columns of C
    const Complex g00 = std::conj(e00) * e00 + std::conj(e10) * e10;
    const Complex g01 = std::conj(e00) * e01 + std::conj(e10) * e11;
    const Complex g10 = std::conj(e01) * e00 + std::conj(e11) * e10;
    const Complex g11 = std::conj(e01) * e01 + std::conj(e11) * e11;
    double defect = entry_abs(g00 - 1.0);
    defect = std::max(defect, entry_abs(g01));
    defect = std::max(defect, entry_abs(g10));
    defect = std::max(defect, entry_abs(g11 - 1.0));
    return defect;
}

CoinOperator hadamard_coin() {
    const double s = std::sqrt(0.5); // correctly rounded 1/sqrt(2)
    return CoinOperator{{s, 0}, {s, 0}, {s, 0}, {-s, 0}};
}

CoinOperator identity_coin() {
    return CoinOperator{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
}

PotentialProfile::PotentialProfile(const CoinOperator& coin1, int q, const CoinOperator& coin2,
                                   int period)
    : coin1_(coin1), coin2_(coin2), q_(q), period_(period) {
    if (period < 1)
        throw std::invalid_argument("potential period must be >= 1");
    if (q < 1 || q > period)
        throw std::invalid_argument("first coin block length q must lie in [1, N]");
    if (q % 2 == 0)
        throw std::invalid_argument("first coin block length q must be odd");
    if (!coin1.is_unitary() || !coin2.is_unitary())
        throw std::invalid_argument("coin operators must be unitary");
}

std::string to_string(CaseLabel label) {
    switch (label) {
    case CaseLabel::IA: return "IA";
    case CaseLabel::IB: return "IB";
    case CaseLabel::IIA: return "IIA";
    case CaseLabel::IIB: return "IIB";
    case CaseLabel::IIIA: return "IIIA";
    case CaseLabel::IIIB: return "IIIB";
    case CaseLabel::Hadamard: return "HADAMARD";
    }
    return "?";
}

CaseLabel case_label_from_string(const std::string& name) {
    if (name == "IA") return CaseLabel::IA;
    if (name == "IB") return CaseLabel::IB;
    if (name == "IIA") return CaseLabel::IIA;
    if (name == "IIB") return CaseLabel::IIB;
    if (name == "IIIA") return CaseLabel::IIIA;
    if (name == "IIIB") return CaseLabel::IIIB;
    if (name == "HADAMARD") return CaseLabel::Hadamard;
    throw std::invalid_argument("unknown walk case '" + name +
                                "' (expected IA, IB, IIA, IIB, IIIA, IIIB or HADAMARD)");
}

PotentialProfile build_case(const WalkCase& walk_case) {
    const CoinOperator h = hadamard_coin();
    const CoinOperator id = identity_coin();
    const int n = walk_case.size;
    switch (walk_case.label) {
    case CaseLabel::IA:
        if (n < 2) throw std::invalid_argument("case IA requires N >= 2");
        return PotentialProfile(h, 1, id, n);
    case CaseLabel::IB:
        if (n < 2) throw std::invalid_argument("case IB requires N >= 2");
        return PotentialProfile(id, 1, h, n);
    case CaseLabel::IIA:
        if (n < 2 || n % 2 != 0) throw std::invalid_argument("case IIA requires even N");
        return PotentialProfile(h, n - 1, id, n);
    case CaseLabel::IIB:
        if (n < 2 || n % 2 != 0) throw std::invalid_argument("case IIB requires even N");
        return PotentialProfile(id, n - 1, h, n);
    case CaseLabel::IIIA:
        if (n < 1 || n % 2 == 0) throw std::invalid_argument("case IIIA requires odd q");
        return PotentialProfile(h, n, id, 2 * n);
    case CaseLabel::IIIB:
        if (n < 1 || n % 2 == 0) throw std::invalid_argument("case IIIB requires odd q");
        return PotentialProfile(id, n, h, 2 * n);
    case CaseLabel::Hadamard:
        // uniform coin, so the block layout is irrelevant; period 1 keeps the
        // q-odd invariant for any requested N
        if (n < 1) throw std::invalid_argument("case HADAMARD requires N >= 1");
        return PotentialProfile(h, 1, h, 1);
    }
    throw std::invalid_argument("unknown walk case label");
}

WalkerState WalkerState::localized(Complex a0, Complex b0) {
    const double n = std::norm(a0) + std::norm(b0);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument("localized state must be normalized");
    WalkerState s;
    s.a_ = {a0};
    s.b_ = {b0};
    s.radius_ = 0;
    s.step_ = 0;
    s.lo_ = s.hi_ = 0;
    return s;
}

WalkerState WalkerState::from_window(int step_t, int window_min, std::vector<Complex> a,
                                     std::vector<Complex> b) {
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("amplitude arrays must be non-empty and equal-sized");
    const int window_max = window_min + static_cast<int>(a.size()) - 1;
    WalkerState s;
    s.radius_ = std::max(std::abs(window_min), std::abs(window_max));
    s.a_.assign(2 * s.radius_ + 1, Complex{});
    s.b_.assign(2 * s.radius_ + 1, Complex{});
    for (int x = window_min; x <= window_max; ++x) {
        s.a_[x + s.radius_] = a[x - window_min];
        s.b_[x + s.radius_] = b[x - window_min];
    }
    s.step_ = step_t;
    s.lo_ = window_min;
    s.hi_ = window_max;
    return s;
}

double WalkerState::norm_sq() const {
    double total = 0.0;
    for (int x = lo_; x <= hi_; ++x)
        total += std::norm(a_[x + radius_]) + std::norm(b_[x + radius_]);
    return total;
}

void WalkerState::reserve_steps(int extra_steps) {
    const int needed = std::max(std::abs(lo_ - extra_steps), std::abs(hi_ + extra_steps));
    if (needed <= radius_)
        return;
    std::vector<Complex> a(2 * needed + 1), b(2 * needed + 1);
    for (int x = lo_; x <= hi_; ++x) {
        a[x + needed] = a_[x + radius_];
        b[x + needed] = b_[x + radius_];
    }
    a_ = std::move(a);
    b_ = std::move(b);
    radius_ = needed;
}

void WalkerState::step_from(const WalkerState& src, const PotentialProfile& profile) {
    assert(radius_ >= std::max(std::abs(src.lo_ - 1), std::abs(src.hi_ + 1)));
    const int lo = src.lo_ - 1;
    const int hi = src.hi_ + 1;
    for (int y = lo; y <= hi; ++y) {
        // A collects from the coined site to the left, B from the right
        Complex a_new{}, b_new{};
        if (y - 1 >= src.lo_ && y - 1 <= src.hi_) {
            const CoinOperator& c = profile.coin_at(y - 1);
            a_new = c.e00 * src.a_[y - 1 + src.radius_] + c.e01 * src.b_[y - 1 + src.radius_];
        }
        if (y + 1 >= src.lo_ && y + 1 <= src.hi_) {
            const CoinOperator& c = profile.coin_at(y + 1);
            b_new = c.e10 * src.a_[y + 1 + src.radius_] + c.e11 * src.b_[y + 1 + src.radius_];
        }
        a_[y + radius_] = a_new;
        b_[y + radius_] = b_new;
    }
    step_ = src.step_ + 1;
    lo_ = lo;
    hi_ = hi;
}

WalkerState step(const WalkerState& state, const PotentialProfile& profile) {
    WalkerState out;
    out.radius_ =
        std::max(state.radius_, std::max(std::abs(state.lo_ - 1), std::abs(state.hi_ + 1)));
    out.a_.assign(2 * out.radius_ + 1, Complex{});
    out.b_.assign(2 * out.radius_ + 1, Complex{});
    out.step_from(state, profile);
    return out;
}

WalkerState evolve(WalkerState state, const PotentialProfile& profile, int steps) {
    if (steps < 0)
        throw std::invalid_argument("step count must be >= 0");
    if (steps == 0)
        return state;
    state.reserve_steps(steps);
    WalkerState scratch = state; // same capacity; the two buffers alternate
    for (int k = 0; k < steps; ++k) {
        scratch.step_from(state, profile);
        std::swap(state, scratch);
        assert(std::abs(state.norm_sq() - 1.0) < kNormGuardTol);
        if (k % 100 == 99 && std::abs(state.norm_sq() - 1.0) > kNormGuardTol)
            throw std::runtime_error("walker normalization drifted beyond tolerance");
    }
    return state;
}

WalkerState symmetric_initial_state() {
    const double s = std::sqrt(0.5);
    return WalkerState::localized(Complex{s, 0.0}, Complex{0.0, s});
}

Distribution position_distribution(const WalkerState& state) {
    Distribution dist;
    dist.reserve(state.window_max() - state.window_min() + 1);
    for (int x = state.window_min(); x <= state.window_max(); ++x)
        dist.emplace_back(x, std::norm(state.amp0(x)) + std::norm(state.amp1(x)));
    return dist;
}

double mean_position(const Distribution& dist) {
    double m = 0.0;
    for (const auto& [x, p] : dist)
        m += static_cast<double>(x) * p;
    return m;
}

double std_dev(const Distribution& dist) {
    double m2 = 0.0;
    for (const auto& [x, p] : dist)
        m2 += static_cast<double>(x) * static_cast<double>(x) * p;
    return std::sqrt(m2);
}

double origin_probability(const WalkerState& state) {
    return std::norm(state.amp0(0)) + std::norm(state.amp1(0));
}

} // namespace qwalk
