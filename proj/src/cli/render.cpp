#include <algorithm>
#include <cstdio>
#include <sstream>

#include "rgit/chambers/chambers.hpp"
#include "rgit/cli/cli.hpp"
#include "rgit/common/errors.hpp"

namespace rgit::cli {

using geom::QVec;
using geom::Rat;

namespace {

struct Pt {
  Rat s, t;
  friend bool operator==(const Pt&, const Pt&) = default;
};

// a s + b t - c
struct Line {
  Rat a, b, c;
  Rat at(const Pt& p) const { return a * p.s + b * p.t - c; }
};

using Poly = std::vector<Pt>;

Rat cross(const Pt& o, const Pt& p, const Pt& q) { return (p.s - o.s) * (q.t - o.t) - (p.t - o.t) * (q.s - o.s); }

Pt centroid(const Poly& poly) {
  Pt g{Rat(0), Rat(0)};
  for (const auto& p : poly) {
    g.s += p.s;
    g.t += p.t;
  }
  const Rat k(static_cast<long>(poly.size()));
  return {g.s / k, g.t / k};
}

// Counterclockwise order around the vertex centroid.
void order(Poly& poly) {
  const Pt g = centroid(poly);
  auto half = [&](const Pt& p) {
    const Rat y = p.t - g.t, x = p.s - g.s;
    return y.sign() < 0 || (y.sign() == 0 && x.sign() < 0);
  };
  std::sort(poly.begin(), poly.end(), [&](const Pt& p, const Pt& q) {
    const bool hp = half(p), hq = half(q);
    if (hp != hq) return !hp;
    return cross(g, p, q).sign() > 0;
  });
}

bool solid(const Poly& poly) {
  for (std::size_t i = 2; i < poly.size(); ++i) {
    if (cross(poly[0], poly[1], poly[i]).sign() != 0) return true;
  }
  return false;
}

// Part of a convex polygon where sign * line >= 0.
Poly clip(const Poly& poly, const Line& l, int sign) {
  Poly out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Pt& p = poly[i];
    const Pt& q = poly[(i + 1) % poly.size()];
    const Rat fp = l.at(p) * Rat(sign), fq = l.at(q) * Rat(sign);
    if (fp.sign() >= 0) out.push_back(p);
    if ((fp.sign() > 0 && fq.sign() < 0) || (fp.sign() < 0 && fq.sign() > 0)) {
      const Rat k = fp / (fp - fq);
      out.push_back({p.s + (q.s - p.s) * k, p.t + (q.t - p.t) * k});
    }
  }
  Poly dedup;
  for (const auto& p : out) {
    if (std::find(dedup.begin(), dedup.end(), p) == dedup.end()) dedup.push_back(p);
  }
  return dedup;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::string render_slice(const QVec& point, const QVec& u, const QVec& v) {
  if (point.dim() != 4 || u.dim() != 4 || v.dim() != 4) throw InputError("render expects vectors of length 4");
  Rat su, sv, sp;
  for (int i = 0; i < 4; ++i) {
    su += u[i];
    sv += v[i];
    sp += point[i];
  }
  if (su.sign() != 0 || sv.sign() != 0) {
    throw DomainError(ErrorKind::DegenerateSlice, "slice directions must have coordinate sum 0");
  }
  bool independent = false;
  for (int i = 0; i < 4 && !independent; ++i) {
    for (int j = i + 1; j < 4 && !independent; ++j) independent = (u[i] * v[j] - u[j] * v[i]).sign() != 0;
  }
  if (!independent) throw DomainError(ErrorKind::DegenerateSlice, "slice directions are linearly dependent");
  if (sp != Rat(2)) throw DomainError(ErrorKind::DegenerateSlice, "slice plane misses the hypersimplex");

  // 0 <= point_i + s u_i + t v_i <= 1
  std::vector<std::pair<Line, int>> bounds;
  for (int i = 0; i < 4; ++i) {
    bounds.push_back({{u[i], v[i], -point[i]}, 1});
    bounds.push_back({{u[i], v[i], Rat(1) - point[i]}, -1});
  }
  Poly poly;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    for (std::size_t j = i + 1; j < bounds.size(); ++j) {
      const Line &l1 = bounds[i].first, &l2 = bounds[j].first;
      const Rat det = l1.a * l2.b - l1.b * l2.a;
      if (det.sign() == 0) continue;
      Pt p{(l1.c * l2.b - l1.b * l2.c) / det, (l1.a * l2.c - l1.c * l2.a) / det};
      bool inside = true;
      for (const auto& [l, s] : bounds) inside = inside && (l.at(p) * Rat(s)).sign() >= 0;
      if (inside && std::find(poly.begin(), poly.end(), p) == poly.end()) poly.push_back(p);
    }
  }
  if (poly.size() < 3 || !solid(poly)) throw DomainError(ErrorKind::DegenerateSlice, "slice plane misses the interior of the hypersimplex");
  order(poly);

  const auto& rel = chambers::relevant_walls(4, 2);
  std::vector<std::optional<Line>> traces;
  std::vector<std::string> inside_walls;
  for (const auto& w : rel) {
    Line l{Rat(0), Rat(0), Rat(w.d)};
    for (int j : w.J) {
      l.a += u[j];
      l.b += v[j];
      l.c -= point[j];
    }
    if (l.a.sign() == 0 && l.b.sign() == 0) {
      if (l.c.sign() == 0) inside_walls.push_back(w.label(4));
      traces.push_back(std::nullopt);
    } else {
      traces.push_back(l);
    }
  }

  std::vector<Poly> cells{poly};
  for (const auto& l : traces) {
    if (!l) continue;
    std::vector<Poly> next;
    for (const auto& c : cells) {
      for (int s : {1, -1}) {
        Poly part = clip(c, *l, s);
        if (part.size() >= 3 && solid(part)) {
          order(part);
          next.push_back(std::move(part));
        }
      }
    }
    cells = std::move(next);
  }

  Rat lo_s = poly[0].s, hi_s = poly[0].s, lo_t = poly[0].t, hi_t = poly[0].t;
  for (const auto& p : poly) {
    lo_s = std::min(lo_s, p.s);
    hi_s = std::max(hi_s, p.s);
    lo_t = std::min(lo_t, p.t);
    hi_t = std::max(hi_t, p.t);
  }
  const double span = std::max((hi_s - lo_s).to_double(), (hi_t - lo_t).to_double());
  const double scale = 400.0 / span;
  auto x = [&](const Pt& p) { return fmt(20.0 + (p.s - lo_s).to_double() * scale); };
  auto y = [&](const Pt& p) { return fmt(420.0 - (p.t - lo_t).to_double() * scale); };
  auto points = [&](const Poly& q) {
    std::string s;
    for (const auto& p : q) s += (s.empty() ? "" : " ") + x(p) + "," + y(p);
    return s;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"440\" height=\"440\" viewBox=\"0 0 440 440\">\n";
  svg << "<title>Delta^4_2 slice</title>\n";
  svg << "<polygon class=\"slice\" points=\"" << points(poly) << "\" fill=\"#f4f4f4\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  for (const auto& label : inside_walls) {
    svg << "<polygon class=\"wall-plane\" data-wall=\"" << label << "\" points=\"" << points(poly)
        << "\" fill=\"none\" stroke=\"#c03030\" stroke-dasharray=\"6,4\"/>\n";
  }
  for (std::size_t k = 0; k < rel.size(); ++k) {
    if (!traces[k]) continue;
    Poly hits;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Pt& p = poly[i];
      const Pt& q = poly[(i + 1) % poly.size()];
      const Rat fp = traces[k]->at(p), fq = traces[k]->at(q);
      if (fp.sign() == 0) hits.push_back(p);
      if (fp.sign() * fq.sign() < 0) {
        const Rat r = fp / (fp - fq);
        hits.push_back({p.s + (q.s - p.s) * r, p.t + (q.t - p.t) * r});
      }
    }
    if (hits.size() < 2) continue;
    std::sort(hits.begin(), hits.end(), [](const Pt& a, const Pt& b) { return a.s != b.s ? a.s < b.s : a.t < b.t; });
    svg << "<line class=\"wall\" data-wall=\"" << rel[k].label(4) << "\" x1=\"" << x(hits.front()) << "\" y1=\""
        << y(hits.front()) << "\" x2=\"" << x(hits.back()) << "\" y2=\"" << y(hits.back())
        << "\" stroke=\"#c03030\" stroke-width=\"1.5\"/>\n";
  }

  std::vector<std::pair<std::string, Pt>> labels;
  for (const auto& c : cells) {
    const Pt g = centroid(c);
    QVec alpha(4);
    for (int i = 0; i < 4; ++i) alpha[i] = point[i] + g.s * u[i] + g.t * v[i];
    std::string sig;
    for (const auto& w : rel) {
      const int s = w.value(alpha).sign();
      sig += s < 0 ? '-' : s > 0 ? '+' : '0';
    }
    labels.emplace_back(sig, g);
  }
  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second.s != b.second.s ? a.second.s < b.second.s : a.second.t < b.second.t;
  });
  for (const auto& [sig, g] : labels) {
    svg << "<text class=\"chamber\" x=\"" << x(g) << "\" y=\"" << y(g)
        << "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">" << sig << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rgit::cli
