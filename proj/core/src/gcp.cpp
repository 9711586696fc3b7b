// Copyright 2026 The gbs-phase-space Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gbs/gcp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gbs/error.hpp"
#include "gbs/parallel.hpp"
#include "gbs/rng.hpp"

namespace gbs {

std::vector<std::size_t> GcpSpec::shape() const {
    std::vector<std::size_t> out;
    out.reserve(subsets.size());
    for (const auto &s : subsets) out.push_back(s.size() + 1);
    return out;
}

std::size_t GcpSpec::bin_count() const {
    std::size_t bins = 1;
    for (const auto &s : subsets) bins *= s.size() + 1;
    return bins;
}

std::string_view to_string(GcpSource source) {
    switch (source) {
        case GcpSource::phase_space: return "phase_space";
        case GcpSource::patterns: return "patterns";
        case GcpSource::exact: return "exact";
    }
    return "unknown";
}

GcpSource parse_gcp_source(std::string_view text) {
    for (auto s : {GcpSource::phase_space, GcpSource::patterns, GcpSource::exact})
        if (text == to_string(s)) return s;
    fail(ErrorCode::data, "unknown GCP source '" + std::string(text) + "'");
}

GcpSpec make_gcp_spec(std::size_t modes, std::vector<std::vector<std::size_t>> subsets) {
    if (modes == 0) fail(ErrorCode::invalid_dimension, "GCP needs at least one mode");
    if (subsets.empty()) fail(ErrorCode::invalid_argument, "GCP needs at least one subset");
    if (subsets.size() > kMaxGcpDimension)
        fail(ErrorCode::cost_guard, "GCP dimension " + std::to_string(subsets.size()) + " exceeds " +
                                        std::to_string(kMaxGcpDimension));
    std::vector<bool> used(modes, false);
    double bins = 1.0;
    for (const auto &subset : subsets) {
        if (subset.empty()) fail(ErrorCode::invalid_argument, "GCP subsets must be non-empty");
        for (std::size_t i : subset) {
            if (i >= modes) fail(ErrorCode::invalid_argument, "mode index " + std::to_string(i) + " out of range");
            if (used[i]) fail(ErrorCode::invalid_argument, "mode " + std::to_string(i) + " appears in two subsets");
            used[i] = true;
        }
        bins *= static_cast<double>(subset.size() + 1);
    }
    if (bins > static_cast<double>(kMaxGcpBins)) fail(ErrorCode::cost_guard, "grouped-count grid is too large");
    GcpSpec spec;
    spec.modes = modes;
    spec.subsets = std::move(subsets);
    return spec;
}

GcpSpec partition_modes(std::size_t modes, std::size_t dimension, std::optional<std::uint64_t> permutation_seed) {
    if (dimension == 0) fail(ErrorCode::invalid_argument, "GCP dimension must be at least 1");
    if (dimension > modes)
        fail(ErrorCode::invalid_argument, "cannot split " + std::to_string(modes) + " modes into " +
                                              std::to_string(dimension) + " subsets");
    if (modes % dimension != 0)
        fail(ErrorCode::invalid_argument, "equal partition needs d to divide M; pass explicit subsets instead");

    std::vector<std::size_t> order(modes);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (permutation_seed) {
        CounterRng rng(*permutation_seed, 0, Stream::partition);
        for (std::size_t i = modes - 1; i > 0; --i) {
            const auto j = std::min(i, static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1)));
            std::swap(order[i], order[j]);
        }
    }
    const std::size_t size = modes / dimension;
    std::vector<std::vector<std::size_t>> subsets(dimension);
    for (std::size_t j = 0; j < dimension; ++j) {
        subsets[j].assign(order.begin() + static_cast<std::ptrdiff_t>(j * size),
                          order.begin() + static_cast<std::ptrdiff_t>((j + 1) * size));
        std::sort(subsets[j].begin(), subsets[j].end());
    }
    GcpSpec spec = make_gcp_spec(modes, std::move(subsets));
    spec.permutation_seed = permutation_seed;
    return spec;
}

boost::multiprecision::cpp_int permutation_count(std::size_t modes, std::size_t dimension) {
    if (dimension == 0 || modes == 0 || modes % dimension != 0)
        fail(ErrorCode::invalid_argument, "permutation count needs d to divide M");
    const std::size_t k = modes / dimension;
    boost::multiprecision::cpp_int binomial = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        binomial *= modes - k + i;
        binomial /= i;
    }
    return binomial / dimension;
}

std::vector<std::size_t> GcpDistribution::unflatten(std::size_t flat) const {
    std::vector<std::size_t> index(shape.size());
    for (std::size_t a = shape.size(); a-- > 0;) {
        index[a] = flat % shape[a];
        flat /= shape[a];
    }
    return index;
}

std::size_t GcpDistribution::flatten(std::span<const std::size_t> index) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape.size(); ++a) flat = flat * shape[a] + index[a];
    return flat;
}

namespace {

constexpr std::size_t kChunk = 256;

// Fourier-observable accumulator for one spec: sums over trajectories of
// prod_j f_j(k_j), kept as split real/imaginary grids.
class FourierAccumulator {
  public:
    FourierAccumulator(const GcpSpec &spec, bool real_factors)
        : spec_(&spec), real_factors_(real_factors), shape_(spec.shape()), bins_(spec.bin_count()),
          sum_re_(bins_, 0.0), sum_im_(bins_, 0.0), outer_re_(bins_), outer_im_(bins_), tmp_re_(bins_),
          tmp_im_(bins_) {
        for (std::size_t len : shape_) {
            std::vector<double> zr(len), zi(len);
            const double theta = 2.0 * std::numbers::pi / static_cast<double>(len);
            for (std::size_t k = 0; k < len; ++k) {
                zr[k] = std::cos(theta * static_cast<double>(k));
                zi[k] = -std::sin(theta * static_cast<double>(k));
            }
            z_re_.push_back(std::move(zr));
            z_im_.push_back(std::move(zi));
            f_re_.emplace_back(len);
            f_im_.emplace_back(len);
        }
    }

    void reset() {
        std::fill(sum_re_.begin(), sum_re_.end(), 0.0);
        std::fill(sum_im_.begin(), sum_im_.end(), 0.0);
    }

    void add(std::span<const Complex> pi0, std::span<const Complex> pi1) {
        for (std::size_t axis = 0; axis < shape_.size(); ++axis) factor(axis, pi0, pi1);
        if (shape_.size() == 1) {
            const auto &fr = f_re_[0];
            const auto &fi = f_im_[0];
            for (std::size_t k = 0; k < bins_; ++k) {
                sum_re_[k] += fr[k];
                sum_im_[k] += fi[k];
            }
            return;
        }
        std::size_t size = shape_[0];
        std::copy(f_re_[0].begin(), f_re_[0].end(), outer_re_.begin());
        std::copy(f_im_[0].begin(), f_im_[0].end(), outer_im_.begin());
        for (std::size_t axis = 1; axis < shape_.size(); ++axis) {
            const std::size_t len = shape_[axis];
            const auto &fr = f_re_[axis];
            const auto &fi = f_im_[axis];
            for (std::size_t a = 0; a < size; ++a) {
                const double ar = outer_re_[a], ai = outer_im_[a];
                double *tr = tmp_re_.data() + a * len;
                double *ti = tmp_im_.data() + a * len;
                for (std::size_t b = 0; b < len; ++b) {
                    tr[b] = ar * fr[b] - ai * fi[b];
                    ti[b] = ar * fi[b] + ai * fr[b];
                }
            }
            size *= len;
            std::copy(tmp_re_.begin(), tmp_re_.begin() + static_cast<std::ptrdiff_t>(size), outer_re_.begin());
            std::copy(tmp_im_.begin(), tmp_im_.begin() + static_cast<std::ptrdiff_t>(size), outer_im_.begin());
        }
        for (std::size_t k = 0; k < bins_; ++k) {
            sum_re_[k] += outer_re_[k];
            sum_im_[k] += outer_im_[k];
        }
    }

    const std::vector<double> &sum_re() const { return sum_re_; }
    const std::vector<double> &sum_im() const { return sum_im_; }

  private:
    void factor(std::size_t axis, std::span<const Complex> pi0, std::span<const Complex> pi1) {
        auto &fr = f_re_[axis];
        auto &fi = f_im_[axis];
        const auto &zr = z_re_[axis];
        const auto &zi = z_im_[axis];
        const std::size_t len = fr.size();
        std::fill(fr.begin(), fr.end(), 1.0);
        std::fill(fi.begin(), fi.end(), 0.0);
        for (std::size_t mode : spec_->subsets[axis]) {
            const double ar = pi0[mode].real(), br = pi1[mode].real();
            if (real_factors_) {
                for (std::size_t k = 0; k < len; ++k) {
                    const double tr = ar + br * zr[k];
                    const double ti = br * zi[k];
                    const double nr = fr[k] * tr - fi[k] * ti;
                    const double ni = fr[k] * ti + fi[k] * tr;
                    fr[k] = nr;
                    fi[k] = ni;
                }
            } else {
                const double ai = pi0[mode].imag(), bi = pi1[mode].imag();
                for (std::size_t k = 0; k < len; ++k) {
                    const double tr = ar + (br * zr[k] - bi * zi[k]);
                    const double ti = ai + (br * zi[k] + bi * zr[k]);
                    const double nr = fr[k] * tr - fi[k] * ti;
                    const double ni = fr[k] * ti + fi[k] * tr;
                    fr[k] = nr;
                    fi[k] = ni;
                }
            }
        }
    }

    const GcpSpec *spec_;
    bool real_factors_;
    std::vector<std::size_t> shape_;
    std::size_t bins_;
    std::vector<double> sum_re_, sum_im_;
    std::vector<double> outer_re_, outer_im_, tmp_re_, tmp_im_;
    std::vector<std::vector<double>> z_re_, z_im_, f_re_, f_im_;
};

// Separable inverse DFT over a row-major grid; returns the real part.
std::vector<double> inverse_dft_real(const std::vector<std::size_t> &shape, std::vector<double> re,
                                     std::vector<double> im) {
    const std::size_t total = re.size();
    std::size_t stride = total;
    std::vector<double> buf_re, buf_im;
    for (std::size_t len : shape) {
        stride /= len;
        std::vector<double> wr(len), wi(len);
        for (std::size_t p = 0; p < len; ++p) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(len);
            wr[p] = std::cos(angle);
            wi[p] = std::sin(angle);
        }
        buf_re.assign(len, 0.0);
        buf_im.assign(len, 0.0);
        const std::size_t outer = total / (len * stride);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t s = 0; s < stride; ++s) {
                const std::size_t base = o * len * stride + s;
                for (std::size_t m = 0; m < len; ++m) {
                    double acc_re = 0.0, acc_im = 0.0;
                    for (std::size_t k = 0; k < len; ++k) {
                        const std::size_t p = (k * m) % len;
                        const double xr = re[base + k * stride], xi = im[base + k * stride];
                        acc_re += xr * wr[p] - xi * wi[p];
                        acc_im += xr * wi[p] + xi * wr[p];
                    }
                    buf_re[m] = acc_re / static_cast<double>(len);
                    buf_im[m] = acc_im / static_cast<double>(len);
                }
                for (std::size_t m = 0; m < len; ++m) {
                    re[base + m * stride] = buf_re[m];
                    im[base + m * stride] = buf_im[m];
                }
            }
    }
    return re;
}

using Partial = std::vector<std::vector<double>>;  // [2 * spec] re, im grids

void add_into(Partial &lhs, const Partial &rhs) {
    for (std::size_t g = 0; g < lhs.size(); ++g)
        for (std::size_t i = 0; i < lhs[g].size(); ++i) lhs[g][i] += rhs[g][i];
}

// Pairwise combination of a stream of partial sums in arrival order.
class PairwiseSum {
  public:
    void push(Partial partial) {
        std::size_t level = 0;
        while (!stack_.empty() && stack_.back().first == level) {
            Partial left = std::move(stack_.back().second);
            stack_.pop_back();
            add_into(left, partial);
            partial = std::move(left);
            ++level;
        }
        stack_.emplace_back(level, std::move(partial));
    }

    Partial finish() {
        Partial total = std::move(stack_.back().second);
        stack_.pop_back();
        while (!stack_.empty()) {
            Partial left = std::move(stack_.back().second);
            stack_.pop_back();
            add_into(left, total);
            total = std::move(left);
        }
        return total;
    }

  private:
    std::vector<std::pair<std::size_t, Partial>> stack_;
};

void check_moments_against(const ClickMoments &cm, std::span<const GcpSpec> specs) {
    for (const auto &spec : specs)
        if (spec.modes != cm.modes)
            fail(ErrorCode::dimension_mismatch, "GCP spec covers " + std::to_string(spec.modes) +
                                                    " modes but click moments have " + std::to_string(cm.modes));
}

}  // namespace

std::vector<GcpDistribution> simulate_gcp(const ClickSource &source, std::size_t trajectories,
                                          std::span<const GcpSpec> specs, std::size_t blocks, unsigned threads) {
    if (specs.empty()) return {};
    if (blocks < 2) fail(ErrorCode::invalid_argument, "block error estimate needs at least 2 blocks");
    if (trajectories < blocks) fail(ErrorCode::invalid_argument, "fewer trajectories than blocks");

    // per_block[b][s] = block estimate of spec s
    std::vector<std::vector<std::vector<double>>> per_block(blocks);
    std::vector<std::size_t> block_size(blocks);

    parallel_for(blocks, threads, [&](std::size_t b) {
        const std::size_t lo = b * trajectories / blocks;
        const std::size_t hi = (b + 1) * trajectories / blocks;
        block_size[b] = hi - lo;
        std::vector<FourierAccumulator> accumulators;
        PairwiseSum pairwise;
        for (std::size_t first = lo; first < hi; first += kChunk) {
            const std::size_t count = std::min(kChunk, hi - first);
            const ClickMoments cm = source(first, count);
            if (cm.trajectories != count) fail(ErrorCode::dimension_mismatch, "click source returned a short chunk");
            check_moments_against(cm, specs);
            if (accumulators.empty()) {
                const bool real = cm.representation == Representation::diagonal_p;
                for (const auto &spec : specs) accumulators.emplace_back(spec, real);
            }
            Partial partial;
            partial.reserve(2 * specs.size());
            for (auto &acc : accumulators) {
                acc.reset();
                for (std::size_t k = 0; k < count; ++k) acc.add(cm.pi0_row(k), cm.pi1_row(k));
                partial.push_back(acc.sum_re());
                partial.push_back(acc.sum_im());
            }
            pairwise.push(std::move(partial));
        }
        Partial total = pairwise.finish();
        const double norm = 1.0 / static_cast<double>(hi - lo);
        per_block[b].resize(specs.size());
        for (std::size_t s = 0; s < specs.size(); ++s) {
            auto &re = total[2 * s];
            auto &im = total[2 * s + 1];
            for (auto &x : re) x *= norm;
            for (auto &x : im) x *= norm;
            per_block[b][s] = inverse_dft_real(specs[s].shape(), std::move(re), std::move(im));
        }
    });

    std::vector<GcpDistribution> out;
    out.reserve(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        GcpDistribution dist;
        dist.spec = specs[s];
        dist.shape = specs[s].shape();
        dist.source = GcpSource::phase_space;
        dist.samples = trajectories;
        const std::size_t bins = specs[s].bin_count();
        dist.probabilities.assign(bins, 0.0);
        dist.sigma.assign(bins, 0.0);
        std::vector<double> block_mean(bins, 0.0);
        for (std::size_t b = 0; b < blocks; ++b) {
            const double weight = static_cast<double>(block_size[b]) / static_cast<double>(trajectories);
            for (std::size_t i = 0; i < bins; ++i) {
                dist.probabilities[i] += weight * per_block[b][s][i];
                block_mean[i] += per_block[b][s][i];
            }
        }
        for (auto &x : block_mean) x /= static_cast<double>(blocks);
        for (std::size_t b = 0; b < blocks; ++b)
            for (std::size_t i = 0; i < bins; ++i) {
                const double d = per_block[b][s][i] - block_mean[i];
                dist.sigma[i] += d * d;
            }
        const double scale = 1.0 / (static_cast<double>(blocks) * static_cast<double>(blocks - 1));
        for (std::size_t i = 0; i < bins; ++i) {
            dist.sigma[i] = std::sqrt(dist.sigma[i] * scale);
            if (!std::isfinite(dist.probabilities[i]) || !std::isfinite(dist.sigma[i]))
                fail(ErrorCode::numerical_guard, "non-finite grouped-count estimate (divergent phase-space sampling)");
        }
        out.push_back(std::move(dist));
    }
    return out;
}

std::vector<GcpDistribution> simulate_gcp(const ClickMoments &moments, std::span<const GcpSpec> specs,
                                          std::size_t blocks, unsigned threads) {
    check_moments_against(moments, specs);
    const std::size_t modes = moments.modes;
    ClickSource source = [&](std::size_t first, std::size_t count) {
        ClickMoments chunk;
        chunk.representation = moments.representation;
        chunk.trajectories = count;
        chunk.modes = modes;
        const auto lo = static_cast<std::ptrdiff_t>(first * modes);
        const auto hi = static_cast<std::ptrdiff_t>((first + count) * modes);
        chunk.pi0.assign(moments.pi0.begin() + lo, moments.pi0.begin() + hi);
        chunk.pi1.assign(moments.pi1.begin() + lo, moments.pi1.begin() + hi);
        return chunk;
    };
    return simulate_gcp(source, moments.trajectories, specs, blocks, threads);
}

GcpDistribution simulate_gcp(const ClickMoments &moments, const GcpSpec &spec, std::size_t blocks,
                             unsigned threads) {
    return std::move(simulate_gcp(moments, std::span<const GcpSpec>(&spec, 1), blocks, threads).front());
}

GcpDistribution bin_patterns(const PatternSet &patterns, const GcpSpec &spec) {
    if (patterns.modes != spec.modes)
        fail(ErrorCode::dimension_mismatch, "patterns have " + std::to_string(patterns.modes) +
                                                " modes but the GCP spec covers " + std::to_string(spec.modes));
    GcpDistribution dist;
    dist.spec = spec;
    dist.shape = spec.shape();
    dist.source = GcpSource::patterns;
    const std::size_t bins = spec.bin_count();
    std::vector<std::uint64_t> counts(bins, 0);
    const std::size_t total = patterns.size();
    for (std::size_t p = 0; p < total; ++p) {
        const auto bits = patterns.pattern(p);
        std::size_t flat = 0;
        for (std::size_t a = 0; a < spec.subsets.size(); ++a) {
            std::size_t m = 0;
            for (std::size_t i : spec.subsets[a]) m += bits[i];
            flat = flat * dist.shape[a] + m;
        }
        ++counts[flat];
    }
    dist.probabilities.resize(bins);
    dist.sigma.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const double p = total == 0 ? 0.0 : static_cast<double>(counts[i]) / static_cast<double>(total);
        dist.probabilities[i] = p;
        dist.sigma[i] = total == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(total));
    }
    dist.raw_counts = std::move(counts);
    dist.samples = total;
    return dist;
}

std::vector<double> marginal(const GcpDistribution &distribution, std::size_t axis) {
    if (axis >= distribution.shape.size()) fail(ErrorCode::invalid_argument, "axis out of range");
    std::vector<double> out(distribution.shape[axis], 0.0);
    for (std::size_t flat = 0; flat < distribution.bin_count(); ++flat)
        out[distribution.unflatten(flat)[axis]] += distribution.probabilities[flat];
    return out;
}

}  // namespace gbs
