#ifndef MIGRANT_RANKDIVERSITY_HPP
#define MIGRANT_RANKDIVERSITY_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "migrant/corpus.hpp"
#include "migrant/flowmetrics.hpp"
#include "migrant/migration.hpp"
#include "migrant/outcome.hpp"

namespace migrant {

/// Distinct words seen at each migrant-internal rank across the years where
/// the pair had at least one accumulated migrant word.
struct RankOccupancy {
    LanguagePair pair;
    std::map<int, std::set<std::string>> ranks;
    int time_slots = 0;

    bool empty() const noexcept { return time_slots == 0; }
};

inline RankOccupancy rank_occupancy(const MigrantSet& migrants, const Corpus& corpus, const LanguageId& source,
                                    const LanguageId& receiver, YearRange years) {
    if (years.empty()) throw std::invalid_argument("rank_occupancy: empty year range");
    RankOccupancy occ{{source, receiver}, {}, 0};
    auto pair = migrants.pair_migrants(source, receiver);
    if (pair.empty()) return occ;
    for (Year t = years.first; t <= years.last; ++t) {
        const auto* list = corpus.find(receiver, t);
        if (!list) continue;
        auto words = accumulated_in(pair, *list);
        if (words.empty()) continue;
        std::sort(words.begin(), words.end(),
                  [](const auto& a, const auto& b) { return rank_before(a.frequency, a.word, b.frequency, b.word); });
        for (std::size_t i = 0; i < words.size(); ++i) occ.ranks[static_cast<int>(i) + 1].insert(words[i].word);
        ++occ.time_slots;
    }
    return occ;
}

struct DiversityPoint {
    int rank = 0;
    double diversity = 0;
};

struct DiversityCurve {
    LanguagePair pair;
    std::vector<DiversityPoint> points; // ascending rank
    int time_slots = 0;
};

/// d(k) = |occupancy(k)| / T.
inline DiversityCurve diversity(const RankOccupancy& occ) {
    DiversityCurve curve{occ.pair, {}, occ.time_slots};
    if (occ.time_slots < 1) return curve;
    for (const auto& [rank, words] : occ.ranks)
        curve.points.push_back({rank, static_cast<double>(words.size()) / occ.time_slots});
    return curve;
}

// ---------------------------------------------------------------------------
// Sigmoid fit

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double probit(double p) { return boost::math::quantile(boost::math::normal_distribution<double>(), p); }

/// Gaussian-CDF sigmoid in log10 rank.
inline double sigmoid(double mu, double sigma, double log10_rank) { return normal_cdf((log10_rank - mu) / sigma); }

struct SigmoidFit {
    double mu = 0;
    double sigma = 0;
    double r_squared = 0;
    std::size_t n_points = 0; // unclipped points in the final regression
    double seed_mu = 0;       // plain least-squares estimate over all clipped points
    double seed_sigma = 0;
    int iterations = 0;
};

enum class FitFailure { TooFewPoints, NonPositiveSlope, Degenerate };

inline const char* to_string(FitFailure f) {
    switch (f) {
    case FitFailure::TooFewPoints: return "too-few-points";
    case FitFailure::NonPositiveSlope: return "non-positive-slope";
    case FitFailure::Degenerate: return "degenerate";
    }
    return "?";
}

struct ProbitPoint {
    double x = 0; // log10 rank
    double z = 0; // probit of the clipped diversity
    bool clipped = false;
};

/// Clip epsilon for a count-derived curve: half a count, 1/(2T).
inline double clip_epsilon(int time_slots) { return 0.5 / std::max(time_slots, 1); }

inline std::vector<ProbitPoint> to_probit(const DiversityCurve& curve) {
    double eps = clip_epsilon(curve.time_slots);
    std::vector<ProbitPoint> out;
    out.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        double d = p.diversity;
        bool clipped = !(d > eps && d < 1 - eps);
        d = std::clamp(d, eps, 1 - eps);
        out.push_back({std::log10(static_cast<double>(p.rank)), probit(d), clipped});
    }
    return out;
}

namespace detail {

struct WeightedLine {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    bool ok = false;
};

// Weighted least squares z = intercept + slope * x; weight(i) < 0 skips the point.
template <class Weight>
WeightedLine weighted_line(std::span<const ProbitPoint> pts, Weight weight) {
    double sw = 0, sx = 0, sz = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double w = weight(i);
        if (w <= 0) continue;
        sw += w;
        sx += w * pts[i].x;
        sz += w * pts[i].z;
    }
    WeightedLine line;
    if (!(sw > 0)) return line;
    double mx = sx / sw, mz = sz / sw;
    double sxx = 0, sxz = 0, szz = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double w = weight(i);
        if (w <= 0) continue;
        double dx = pts[i].x - mx, dz = pts[i].z - mz;
        sxx += w * dx * dx;
        sxz += w * dx * dz;
        szz += w * dz * dz;
    }
    if (!(sxx > 0)) return line;
    line.slope = sxz / sxx;
    line.intercept = mz - line.slope * mx;
    line.r_squared = szz > 0 ? (sxz * sxz) / (sxx * szz) : 1.0;
    line.ok = true;
    return line;
}

} // namespace detail

/// Fits z = (x - mu) / sigma in probit space.
///
/// The plain least-squares line over all points (clipped ones included) seeds
/// an iteratively reweighted regression over the unclipped points with weights
/// phi(z_hat)^2, the inverse variance of an additive error in d after the
/// probit transform. Without reweighting, points in the saturated tail
/// dominate the slope.
inline Outcome<SigmoidFit, FitFailure> fit_probit_points(std::span<const ProbitPoint> pts) {
    std::size_t usable = std::count_if(pts.begin(), pts.end(), [](const auto& p) { return !p.clipped; });
    if (usable < 4) return FitFailure::TooFewPoints;

    auto seed = detail::weighted_line(pts, [](std::size_t) { return 1.0; });
    if (!seed.ok || seed.slope <= 0)
        seed = detail::weighted_line(pts, [&](std::size_t i) { return pts[i].clipped ? 0.0 : 1.0; });
    if (!seed.ok) return FitFailure::Degenerate;
    if (seed.slope <= 0) return FitFailure::NonPositiveSlope;

    SigmoidFit fit;
    fit.sigma = 1.0 / seed.slope;
    fit.mu = -seed.intercept * fit.sigma;
    fit.seed_mu = fit.mu;
    fit.seed_sigma = fit.sigma;
    fit.n_points = usable;
    fit.r_squared = seed.r_squared;

    constexpr int kMaxIterations = 500;
    for (int it = 1; it <= kMaxIterations; ++it) {
        double mu = fit.mu, sigma = fit.sigma;
        auto line = detail::weighted_line(pts, [&](std::size_t i) {
            if (pts[i].clipped) return 0.0;
            double zhat = (pts[i].x - mu) / sigma;
            return std::exp(-zhat * zhat); // phi(zhat)^2 up to a constant
        });
        if (!line.ok) return FitFailure::Degenerate;
        if (line.slope <= 0) return FitFailure::NonPositiveSlope;
        fit.sigma = 1.0 / line.slope;
        fit.mu = -line.intercept * fit.sigma;
        fit.r_squared = line.r_squared;
        fit.iterations = it;
        if (std::abs(fit.mu - mu) <= 1e-13 * (1 + std::abs(mu)) &&
            std::abs(fit.sigma - sigma) <= 1e-13 * (1 + sigma))
            break;
    }
    return fit;
}

inline Outcome<SigmoidFit, FitFailure> fit_sigmoid(const DiversityCurve& curve) {
    auto pts = to_probit(curve);
    return fit_probit_points(pts);
}

/// One fit over the pooled points of all curves.
inline Outcome<SigmoidFit, FitFailure> global_fit(std::span<const DiversityCurve> curves) {
    std::vector<ProbitPoint> pooled;
    for (const auto& c : curves) {
        auto pts = to_probit(c);
        pooled.insert(pooled.end(), pts.begin(), pts.end());
    }
    return fit_probit_points(pooled);
}

} // namespace migrant

#endif // MIGRANT_RANKDIVERSITY_HPP
