#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace aperiodica {

// Bernoulli lattice-gas configuration on a box of Z^d, d in {1, 2}.
struct LatticeGas {
    int dim = 1;
    int extent = 0;                // sites per axis
    std::vector<std::uint8_t> occ; // row-major

    std::uint8_t at(int x) const { return occ[std::size_t(x)]; }
    std::uint8_t at(int x, int y) const { return occ[std::size_t(y) * std::size_t(extent) + std::size_t(x)]; }

    std::size_t occupied() const {
        std::size_t k = 0;
        for (auto v : occ) k += v;
        return k;
    }
};

// i.i.d. occupation with probability p per site, reproducible for a fixed
// seed (explicit 53-bit uniforms; the distribution object is not used since
// its stream is implementation-defined).
inline LatticeGas bernoulli_sample(int d, double p, int box, std::uint64_t seed) {
    if (d != 1 && d != 2) throw std::invalid_argument("bernoulli_sample: d must be 1 or 2");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bernoulli_sample: p must be in (0,1)");
    if (box <= 0) throw std::invalid_argument("bernoulli_sample: box must be positive");
    LatticeGas g;
    g.dim = d;
    g.extent = box;
    std::size_t n = d == 1 ? std::size_t(box) : std::size_t(box) * std::size_t(box);
    g.occ.resize(n);
    std::mt19937_64 gen(seed);
    for (auto& v : g.occ) {
        double u = double(gen() >> 11) * 0x1.0p-53;
        v = u < p ? 1 : 0;
    }
    return g;
}

// Exact shift-match periodicity on the box: some t with 1 <= |t| <= extent/2
// whose linear overlap agrees everywhere.
inline bool has_nontrivial_period(const LatticeGas& g) {
    int L = g.extent;
    if (g.dim == 1) {
        for (int t = 1; t <= L / 2; ++t) {
            bool match = true;
            for (int i = 0; i + t < L && match; ++i)
                if (g.at(i) != g.at(i + t)) match = false;
            if (match) return true;
        }
        return false;
    }
    for (int tx = 0; tx <= L / 2; ++tx) {
        for (int ty = -L / 2; ty <= L / 2; ++ty) {
            if (tx == 0 && ty <= 0) continue;
            bool match = true;
            for (int x = 0; x + tx < L && match; ++x) {
                int ylo = std::max(0, -ty), yhi = std::min(L, L - ty);
                for (int y = ylo; y < yhi; ++y)
                    if (g.at(x, y) != g.at(x + tx, y + ty)) { match = false; break; }
            }
            if (match) return true;
        }
    }
    return false;
}

// Union-bound oracle for the probability that a length-L Bernoulli(p) word
// admits a linear shift match for some 1 <= t <= tmax. The residue classes
// mod t form independent chains; a chain of size s is constant with
// probability p^s + (1-p)^s.
inline double shift_match_probability_upper(double p, int length, int tmax) {
    double total = 0.0;
    for (int t = 1; t <= tmax; ++t) {
        double prob = 1.0;
        for (int r = 0; r < t; ++r) {
            int size = (length - r + t - 1) / t;
            prob *= std::pow(p, size) + std::pow(1.0 - p, size);
        }
        total += prob;
    }
    return total;
}

struct AperiodicityEstimate {
    std::size_t trials = 0;
    std::size_t periodic = 0;
    double fraction = 0.0;
    double wilson_low = 0.0, wilson_high = 0.0; // 95% confidence interval
};

// Monte-Carlo estimate of the fraction of periodic samples, with a Wilson
// interval. Per-trial seeds derive from the base seed, so runs reproduce.
inline AperiodicityEstimate metric_aperiodicity_estimate(
    const std::function<LatticeGas(std::uint64_t)>& sampler, std::size_t trials,
    std::uint64_t base_seed = 1) {
    if (trials < 100)
        throw std::invalid_argument("metric_aperiodicity_estimate: need at least 100 trials");
    AperiodicityEstimate est;
    est.trials = trials;
    for (std::size_t k = 0; k < trials; ++k)
        if (has_nontrivial_period(sampler(base_seed + k))) ++est.periodic;
    double n = double(trials), k = double(est.periodic);
    est.fraction = k / n;
    const double z = 1.959963984540054;
    double z2 = z * z;
    double center = (k + z2 / 2) / (n + z2);
    double half = z * std::sqrt(k * (n - k) / n + z2 / 4) / (n + z2);
    est.wilson_low = std::max(0.0, center - half);
    est.wilson_high = std::min(1.0, center + half);
    return est;
}

} // namespace aperiodica
