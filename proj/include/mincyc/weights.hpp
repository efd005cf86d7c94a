#ifndef MINCYC_WEIGHTS_HPP
#define MINCYC_WEIGHTS_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mincyc/complex.hpp"
#include "mincyc/error.hpp"

namespace mincyc {

/// Nonnegative per-edge weights.
class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(std::vector<double> weights) : w_(std::move(weights))
    {
        for (std::size_t e = 0; e < w_.size(); ++e)
            if (!(w_[e] >= 0.0) || !std::isfinite(w_[e]))
                throw Error(ErrorCode::NegativeWeight,
                            "edge " + std::to_string(e) + " has weight " + std::to_string(w_[e]));
    }

    static WeightFunction unit(std::size_t edge_count) { return WeightFunction(std::vector<double>(edge_count, 1.0)); }

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](SimplexIndex e) const { return w_.at(e); }
    const std::vector<double>& values() const noexcept { return w_; }

private:
    std::vector<double> w_;
};

/// Sum of edge weights over the chain, in ascending edge order; 0 for the empty chain.
inline double chain_weight(const WeightFunction& L, const Chain& x)
{
    if (x.dim != 1 || x.bits.size() != L.size())
        throw Error(ErrorCode::DimensionMismatch, "chain_weight expects a 1-chain over the weighted edges");
    double total = 0.0;
    x.bits.for_each_set([&](std::size_t e) { total += L[static_cast<SimplexIndex>(e)]; });
    return total;
}

} // namespace mincyc

#endif
