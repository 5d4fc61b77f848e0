#include "psched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psched {

ReferenceFront build_simulated_front(const std::vector<Archive>& archives) {
    std::vector<ObjectivePoint> pool;
    for (const Archive& a : archives)
        for (const ArchiveEntry& e : a.entries) pool.push_back(e.point);
    if (pool.empty()) throw std::invalid_argument("build_simulated_front: no archive points");
    return ReferenceFront{nondominated_points(std::move(pool))};
}

double distance_to_front(const ObjectivePoint& point, const ReferenceFront& front) {
    if (front.points.empty()) throw std::invalid_argument("empty reference front");
    double best = std::numeric_limits<double>::infinity();
    for (const ObjectivePoint& f : front.points) {
        const double de = point.energy - f.energy;
        const double dm = point.makespan - f.makespan;
        best = std::min(best, std::sqrt(de * de + dm * dm));
    }
    return best;
}

double gd(std::span<const ObjectivePoint> archive_points, const ReferenceFront& front) {
    if (archive_points.empty()) throw std::invalid_argument("gd: empty archive");
    if (front.points.empty()) throw std::invalid_argument("gd: empty reference front");
    double sum_sq = 0.0;
    for (const ObjectivePoint& p : archive_points) {
        const double d = distance_to_front(p, front);
        sum_sq += d * d;
    }
    return std::sqrt(sum_sq) / static_cast<double>(archive_points.size());
}

SpResult sp(std::span<const ObjectivePoint> archive_points, const ReferenceFront& front) {
    if (front.points.empty()) throw std::invalid_argument("sp: empty reference front");
    if (archive_points.size() < 2) return SpResult{0.0, true};

    std::vector<double> d;
    d.reserve(archive_points.size());
    for (const ObjectivePoint& p : archive_points) d.push_back(distance_to_front(p, front));
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    double sum_sq = 0.0;
    for (double v : d) sum_sq += (mean - v) * (mean - v);
    return SpResult{std::sqrt(sum_sq) / static_cast<double>(d.size() - 1), false};
}

CountStats count_stats(const Archive& archive, const ReferenceFront& front, double tol_rel) {
    if (tol_rel < 0.0) throw std::invalid_argument("count_stats: negative tolerance");
    if (front.points.empty()) throw std::invalid_argument("count_stats: empty reference front");

    double e_lo = front.points.front().energy;
    double e_hi = e_lo;
    double m_lo = front.points.front().makespan;
    double m_hi = m_lo;
    for (const ObjectivePoint& p : front.points) {
        e_lo = std::min(e_lo, p.energy);
        e_hi = std::max(e_hi, p.energy);
        m_lo = std::min(m_lo, p.makespan);
        m_hi = std::max(m_hi, p.makespan);
    }
    const double tol_abs = tol_rel * std::max(e_hi - e_lo, m_hi - m_lo);

    CountStats stats;
    stats.n_n = static_cast<int>(archive.entries.size());
    for (const ArchiveEntry& e : archive.entries)
        if (distance_to_front(e.point, front) <= tol_abs) ++stats.n_p;
    return stats;
}

} // namespace psched
