#include <algorithm>
#include <cmath>
#include <vector>

#include <opencv2/imgproc.hpp>

#include "qs/reconstruct.hpp"
#include "reconstruct_internal.hpp"

namespace qs {

namespace {

bool all_collinear(const std::vector<cv::Point2f>& pts) {
    if (pts.size() < 3) return true;
    const cv::Point2f a = pts[0];
    std::size_t second = 1;
    while (second < pts.size() && pts[second] == a) ++second;
    if (second >= pts.size()) return true;
    const cv::Point2f b = pts[second];
    for (std::size_t i = second + 1; i < pts.size(); ++i) {
        const double cross = static_cast<double>(b.x - a.x) * (pts[i].y - a.y) -
                             static_cast<double>(b.y - a.y) * (pts[i].x - a.x);
        if (cross != 0.0) return false;
    }
    return true;
}

}  // namespace

GrayImage reconstruct_linear(const SampledImage& sampled) {
    const int h = sampled.height();
    const int w = sampled.width();

    std::vector<cv::Point2f> points;
    points.reserve(sampled.mask.transparent_count());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (sampled.known(r, c)) {
                points.emplace_back(static_cast<float>(c), static_cast<float>(r));
            }
        }
    }
    if (points.size() < 3 || all_collinear(points)) {
        throw ValidationError("linear reconstruction needs >= 3 non-collinear known pixels");
    }

    cv::Subdiv2D subdiv(cv::Rect(-1, -1, w + 2, h + 2));
    subdiv.insert(points);
    std::vector<cv::Vec6f> triangles;
    subdiv.getTriangleList(triangles);

    GrayImage out(h, w);
    std::vector<std::uint8_t> covered(static_cast<std::size_t>(h) * w, 0);

    for (const cv::Vec6f& t : triangles) {
        const double ax = t[0], ay = t[1], bx = t[2], by = t[3], cx = t[4], cy = t[5];
        // Triangles touching the subdivision's virtual outer vertices lie
        // outside the pixel grid.
        if (ax < 0 || ax >= w || ay < 0 || ay >= h || bx < 0 || bx >= w || by < 0 ||
            by >= h || cx < 0 || cx >= w || cy < 0 || cy >= h) {
            continue;
        }
        const double va = sampled.values.at(static_cast<int>(ay), static_cast<int>(ax));
        const double vb = sampled.values.at(static_cast<int>(by), static_cast<int>(bx));
        const double vc = sampled.values.at(static_cast<int>(cy), static_cast<int>(cx));
        const double denom = (by - cy) * (ax - cx) + (cx - bx) * (ay - cy);
        if (denom == 0.0) continue;
        const int r0 = std::max(0, static_cast<int>(std::floor(std::min({ay, by, cy}))));
        const int r1 = std::min(h - 1, static_cast<int>(std::ceil(std::max({ay, by, cy}))));
        const int c0 = std::max(0, static_cast<int>(std::floor(std::min({ax, bx, cx}))));
        const int c1 = std::min(w - 1, static_cast<int>(std::ceil(std::max({ax, bx, cx}))));
        constexpr double kEps = 1e-9;
        for (int r = r0; r <= r1; ++r) {
            for (int c = c0; c <= c1; ++c) {
                const double l1 = ((by - cy) * (c - cx) + (cx - bx) * (r - cy)) / denom;
                const double l2 = ((cy - ay) * (c - cx) + (ax - cx) * (r - cy)) / denom;
                const double l3 = 1.0 - l1 - l2;
                if (l1 < -kEps || l2 < -kEps || l3 < -kEps) continue;
                out.at(r, c) = l1 * va + l2 * vb + l3 * vc;
                covered[static_cast<std::size_t>(r) * w + c] = 1;
            }
        }
    }

    // Outside the convex hull: nearest-neighbor fallback.
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!covered[static_cast<std::size_t>(r) * w + c]) {
                const detail::Coord2 p = detail::nearest_known(sampled, r, c);
                out.at(r, c) = sampled.values.at(p.row, p.col);
            }
        }
    }
    // Known pixels keep their values exactly.
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (sampled.known(r, c)) {
                out.at(r, c) = sampled.values.at(r, c);
            }
        }
    }
    return out;
}

}  // namespace qs
