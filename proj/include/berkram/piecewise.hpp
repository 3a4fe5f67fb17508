#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "berkram/rational.hpp"

namespace berkram {

struct AffinePiece {
    Rat s0, s1;       // interval [s0, s1]
    Rat alpha, beta;  // value alpha + beta*s

    Rat at(const Rat& s) const { return alpha + beta * s; }
};

// Continuous piecewise-affine function on [lo, hi] with exact rational
// breakpoints.  Pieces are contiguous and adjacent pieces agree at shared
// breakpoints; a degenerate interval lo = hi is one constant piece.
class PLFunc {
  public:
    PLFunc(Rat lo, Rat hi, std::vector<AffinePiece> pieces)
        : lo_(std::move(lo)), hi_(std::move(hi)), pieces_(std::move(pieces)) {
        if (pieces_.empty())
            throw error(errc::invalid_argument, "piecewise function with no pieces");
        merge_collinear();
    }

    static PLFunc affine(const Rat& lo, const Rat& hi, const Rat& alpha, const Rat& beta) {
        return PLFunc(lo, hi, {AffinePiece{lo, hi, alpha, beta}});
    }
    static PLFunc constant(const Rat& lo, const Rat& hi, const Rat& c) {
        return affine(lo, hi, c, Rat(0));
    }

    struct Line {
        Rat intercept, slope;
    };

    // pointwise minimum of finitely many lines, restricted to [lo, hi]
    static PLFunc lower_envelope(const Rat& lo, const Rat& hi, std::vector<Line> lines) {
        if (lines.empty()) throw error(errc::invalid_argument, "empty envelope");
        if (lo == hi) {
            const Line* best = &lines.front();
            Rat bestv = best->intercept + best->slope * lo;
            for (const auto& l : lines) {
                Rat v = l.intercept + l.slope * lo;
                if (v < bestv) {
                    bestv = v;
                    best = &l;
                }
            }
            return PLFunc(lo, hi, {AffinePiece{lo, hi, best->intercept, best->slope}});
        }

        // steepest slope is active leftmost; per slope only the lowest
        // intercept can appear
        std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
            if (a.slope != b.slope) return a.slope > b.slope;
            return a.intercept < b.intercept;
        });
        std::vector<Line> uniq;
        for (const auto& l : lines)
            if (uniq.empty() || uniq.back().slope != l.slope) uniq.push_back(l);

        std::vector<Line> hull;
        std::vector<Rat> cut;  // cut[i]: hull[i+1] takes over from hull[i]
        for (const auto& l : uniq) {
            while (true) {
                if (hull.empty()) {
                    hull.push_back(l);
                    break;
                }
                const Line& last = hull.back();
                Rat x = (l.intercept - last.intercept) / (last.slope - l.slope);
                if (!cut.empty() && x <= cut.back()) {
                    hull.pop_back();
                    cut.pop_back();
                    continue;
                }
                cut.push_back(x);
                hull.push_back(l);
                break;
            }
        }

        std::vector<AffinePiece> pieces;
        for (size_t i = 0; i < hull.size(); ++i) {
            Rat left = (i == 0) ? lo : std::max(cut[i - 1], lo);
            Rat right = (i + 1 == hull.size()) ? hi : std::min(cut[i], hi);
            if (left >= right) continue;
            pieces.push_back(AffinePiece{left, right, hull[i].intercept, hull[i].slope});
        }
        return PLFunc(lo, hi, std::move(pieces));
    }

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }

    Rat eval(const Rat& s) const {
        for (const auto& p : pieces_)
            if (s >= p.s0 && s <= p.s1) return p.at(s);
        throw error(errc::invalid_argument, "evaluation outside the interval");
    }

    std::vector<Rat> breakpoints() const {
        std::vector<Rat> b;
        b.push_back(lo_);
        for (const auto& p : pieces_)
            if (p.s1 != b.back()) b.push_back(p.s1);
        return b;
    }

    PLFunc scaled(const Rat& k) const {
        std::vector<AffinePiece> out(pieces_);
        for (auto& p : out) {
            p.alpha *= k;
            p.beta *= k;
        }
        return PLFunc(lo_, hi_, std::move(out));
    }

    PLFunc plus_affine(const Rat& alpha, const Rat& beta) const {
        std::vector<AffinePiece> out(pieces_);
        for (auto& p : out) {
            p.alpha += alpha;
            p.beta += beta;
        }
        return PLFunc(lo_, hi_, std::move(out));
    }

    PLFunc operator-() const { return scaled(Rat(-1)); }

    friend PLFunc operator+(const PLFunc& a, const PLFunc& b) {
        return combine(a, b,
                       [](const AffinePiece& x, const AffinePiece& y, const Rat& s0, const Rat& s1,
                          std::vector<AffinePiece>& out) {
                           out.push_back(AffinePiece{s0, s1, x.alpha + y.alpha, x.beta + y.beta});
                       });
    }
    friend PLFunc operator-(const PLFunc& a, const PLFunc& b) { return a + (-b); }

    friend PLFunc pointwise_max(const PLFunc& a, const PLFunc& b) {
        return combine(a, b,
                       [](const AffinePiece& x, const AffinePiece& y, const Rat& s0, const Rat& s1,
                          std::vector<AffinePiece>& out) {
                           Rat x0 = x.at(s0), y0 = y.at(s0);
                           Rat x1 = x.at(s1), y1 = y.at(s1);
                           bool x_lo = x0 >= y0, x_hi = x1 >= y1;
                           if (x_lo == x_hi || s0 == s1) {
                               const AffinePiece& w = x_lo ? x : y;
                               out.push_back(AffinePiece{s0, s1, w.alpha, w.beta});
                               return;
                           }
                           Rat cross = (y.alpha - x.alpha) / (x.beta - y.beta);
                           const AffinePiece& first = x_lo ? x : y;
                           const AffinePiece& second = x_lo ? y : x;
                           if (cross == s0) {
                               out.push_back(AffinePiece{s0, s1, second.alpha, second.beta});
                           } else if (cross == s1) {
                               out.push_back(AffinePiece{s0, s1, first.alpha, first.beta});
                           } else {
                               out.push_back(AffinePiece{s0, cross, first.alpha, first.beta});
                               out.push_back(AffinePiece{cross, s1, second.alpha, second.beta});
                           }
                       });
    }

    friend PLFunc pointwise_max(const PLFunc& a, const Rat& c) {
        return pointwise_max(a, constant(a.lo_, a.hi_, c));
    }

    // maximum value and a point attaining it (always at a breakpoint)
    std::pair<Rat, Rat> max_value() const {
        Rat best = pieces_.front().at(pieces_.front().s0);
        Rat at = pieces_.front().s0;
        for (const auto& p : pieces_) {
            for (const Rat& s : {p.s0, p.s1}) {
                Rat v = p.at(s);
                if (v > best) {
                    best = v;
                    at = s;
                }
            }
        }
        return {best, at};
    }

    std::pair<Rat, Rat> min_value() const {
        Rat best = pieces_.front().at(pieces_.front().s0);
        Rat at = pieces_.front().s0;
        for (const auto& p : pieces_) {
            for (const Rat& s : {p.s0, p.s1}) {
                Rat v = p.at(s);
                if (v < best) {
                    best = v;
                    at = s;
                }
            }
        }
        return {best, at};
    }

  private:
    Rat lo_, hi_;
    std::vector<AffinePiece> pieces_;

    template <class F>
    static PLFunc combine(const PLFunc& a, const PLFunc& b, F&& emit) {
        if (a.lo_ != b.lo_ || a.hi_ != b.hi_)
            throw error(errc::invalid_argument, "piecewise functions on different intervals");
        std::vector<AffinePiece> out;
        if (a.lo_ == a.hi_) {
            emit(a.pieces_.front(), b.pieces_.front(), a.lo_, a.hi_, out);
            return PLFunc(a.lo_, a.hi_, std::move(out));
        }
        std::vector<Rat> cuts;
        for (const auto& p : a.pieces_) {
            cuts.push_back(p.s0);
            cuts.push_back(p.s1);
        }
        for (const auto& p : b.pieces_) {
            cuts.push_back(p.s0);
            cuts.push_back(p.s1);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            emit(a.piece_covering(cuts[i], cuts[i + 1]), b.piece_covering(cuts[i], cuts[i + 1]),
                 cuts[i], cuts[i + 1], out);
        return PLFunc(a.lo_, a.hi_, std::move(out));
    }

    const AffinePiece& piece_covering(const Rat& l, const Rat& r) const {
        for (const auto& p : pieces_)
            if (l >= p.s0 && r <= p.s1) return p;
        throw error(errc::invalid_argument, "subinterval not covered by one piece");
    }

    void merge_collinear() {
        std::vector<AffinePiece> out;
        for (const auto& p : pieces_) {
            if (!out.empty() && out.back().alpha == p.alpha && out.back().beta == p.beta &&
                out.back().s1 == p.s0) {
                out.back().s1 = p.s1;
            } else {
                out.push_back(p);
            }
        }
        pieces_ = std::move(out);
    }
};

}  // namespace berkram
