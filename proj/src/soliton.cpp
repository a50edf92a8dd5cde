#include "curveflow/soliton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "curveflow/errors.hpp"

namespace curveflow {

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Stationary: return "stationary";
        case Verdict::Shrinker: return "shrinker";
        case Verdict::Expander: return "expander";
        case Verdict::Translator: return "translator";
        case Verdict::Rotator: return "rotator";
        case Verdict::None: return "none";
    }
    return "none";
}

namespace {

using Column = std::vector<double>;

double weighted_dot(const Column& a, const Column& b, const std::vector<double>& w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i] * w[i];
    return acc;
}

double weighted_norm(const Column& a, const std::vector<double>& w) { return std::sqrt(weighted_dot(a, a, w)); }

double total_length(const CurveFields& f) { return std::accumulate(f.dl.begin(), f.dl.end(), 0.0); }

/// Weighted least squares min ||A c - target||_w by modified Gram-Schmidt.
/// Columns whose remaining norm falls below `drop` times their original norm
/// are treated as dependent and get coefficient zero.
struct LeastSquares {
    std::vector<double> coeff;
    std::vector<bool> kept;
    std::vector<double> remaining_norm2;  // per column, after orthogonalisation
    Column residual;                      // target - A c
};

LeastSquares weighted_lstsq(std::vector<Column> cols, const Column& target, const std::vector<double>& w,
                            double drop = 1e-6) {
    const std::size_t m = cols.size();
    LeastSquares out;
    out.coeff.assign(m, 0.0);
    out.kept.assign(m, false);
    out.remaining_norm2.assign(m, 0.0);
    std::vector<Column> q;
    std::vector<std::size_t> q_index;
    std::vector<std::vector<double>> r(m, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        const double original = weighted_norm(cols[j], w);
        for (std::size_t k = 0; k < q.size(); ++k) {
            const double proj = weighted_dot(q[k], cols[j], w);
            r[k][j] = proj;
            for (std::size_t i = 0; i < cols[j].size(); ++i) cols[j][i] -= proj * q[k][i];
        }
        const double rest = weighted_norm(cols[j], w);
        out.remaining_norm2[j] = rest * rest;
        if (!(rest > drop * original) || rest == 0.0) continue;
        for (double& v : cols[j]) v /= rest;
        r[q.size()][j] = rest;
        q.push_back(cols[j]);
        q_index.push_back(j);
        out.kept[j] = true;
    }
    out.residual = target;
    std::vector<double> qt(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) {
        qt[k] = weighted_dot(q[k], out.residual, w);
        for (std::size_t i = 0; i < out.residual.size(); ++i) out.residual[i] -= qt[k] * q[k][i];
    }
    // Back substitution on the kept columns.
    for (std::size_t k = q.size(); k-- > 0;) {
        double acc = qt[k];
        for (std::size_t l = k + 1; l < q.size(); ++l) acc -= r[k][q_index[l]] * out.coeff[q_index[l]];
        out.coeff[q_index[k]] = acc / r[k][q_index[k]];
    }
    return out;
}

std::vector<double> weights(const CurveFields& f) { return f.dl; }

double kappa_scale(const CurveFields& f) {
    const double knorm = weighted_norm(f.kappa, f.dl);
    return std::max(knorm, 1e-12 / std::sqrt(total_length(f)));
}

}  // namespace

double kappa_ss_scale(const DiscreteCurve& /*curve*/, const CurveFields& fields) {
    const double len = total_length(fields);
    return std::max(weighted_norm(fields.kappa_ss, fields.dl), kappa_scale(fields) / (len * len));
}

StationaryFit fit_stationary(const DiscreteCurve& curve) { return fit_stationary(curve, curve_fields(curve)); }

StationaryFit fit_stationary(const DiscreteCurve& curve, const CurveFields& f) {
    const std::size_t n = f.size();
    Column ones(n, 1.0);
    if (curve.closed()) {
        // A closed curve cannot carry k2 != 0, and s has a seam at node 0.
        const auto ls = weighted_lstsq({ones}, f.kappa, weights(f), 1e-12);
        StationaryFit fit;
        fit.k1 = ls.coeff[0];
        fit.k2 = 0.0;
        fit.residual = weighted_norm(ls.residual, f.dl) / kappa_scale(f);
        return fit;
    }
    // Centre s for conditioning; shift the intercept back afterwards.
    const double len = total_length(f);
    double s_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) s_mean += f.s[i] * f.dl[i];
    s_mean /= len;
    Column s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = f.s[i] - s_mean;
    const auto ls = weighted_lstsq({ones, s}, f.kappa, weights(f), 1e-12);
    StationaryFit fit;
    fit.k2 = ls.coeff[1];
    fit.k1 = ls.coeff[0] + fit.k2 * (0.5 * len - s_mean);
    fit.residual = weighted_norm(ls.residual, f.dl) / kappa_scale(f);
    return fit;
}

ShrinkerFit fit_shrinker(const DiscreteCurve& curve) { return fit_shrinker(curve, curve_fields(curve)); }

ShrinkerFit fit_shrinker(const DiscreteCurve& curve, const CurveFields& f) {
    const std::size_t n = f.size();
    Column nx(n), ny(n), g(n), target(n);
    for (std::size_t i = 0; i < n; ++i) {
        nx[i] = -f.normal[i].x;
        ny[i] = -f.normal[i].y;
        g[i] = dot(curve[i], f.normal[i]);
        target[i] = -f.kappa_ss[i];
    }
    // Translation columns first: b = K c absorbs the centre, so the last
    // column carries only the part of <gamma, nu> no translation explains.
    const auto ls = weighted_lstsq({nx, ny, g}, target, f.dl, 1e-6);
    const double len = total_length(f);
    if (!ls.kept[2] || ls.remaining_norm2[2] <= 1e-12 * len * len * len) {
        throw Error(ErrorKind::DegenerateGeometry, "support function is explained by a translation; K is not identifiable");
    }
    ShrinkerFit fit;
    fit.K = ls.coeff[2];
    const Vec2 b{ls.coeff[0], ls.coeff[1]};
    fit.center = fit.K != 0.0 ? b / fit.K : Vec2{};
    fit.residual = weighted_norm(ls.residual, f.dl) / kappa_ss_scale(curve, f);
    return fit;
}

TranslatorFit fit_translator(const DiscreteCurve& curve) { return fit_translator(curve, curve_fields(curve)); }

TranslatorFit fit_translator(const DiscreteCurve& curve, const CurveFields& f) {
    const std::size_t n = f.size();
    // Normal equations M V = r with M = sum nu nu^T dl, r = sum -kappa_ss nu dl.
    double mxx = 0.0, mxy = 0.0, myy = 0.0;
    Vec2 r{};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 nu = f.normal[i];
        mxx += nu.x * nu.x * f.dl[i];
        mxy += nu.x * nu.y * f.dl[i];
        myy += nu.y * nu.y * f.dl[i];
        r += (-f.kappa_ss[i] * f.dl[i]) * nu;
    }
    const double mean = 0.5 * (mxx + myy);
    const double spread = std::hypot(0.5 * (mxx - myy), mxy);
    const double lmax = mean + spread, lmin = mean - spread;

    TranslatorFit fit;
    if (lmin > 0.0 && lmax / lmin < 1e12) {
        const double det = mxx * myy - mxy * mxy;
        fit.V = {(myy * r.x - mxy * r.y) / det, (mxx * r.y - mxy * r.x) / det};
    } else {
        // Only the component along the dominant normal direction is identifiable.
        Vec2 e = std::abs(mxy) > 0.0 ? Vec2{lmax - myy, mxy} : (mxx >= myy ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0});
        e = e / norm(e);
        fit.V = lmax > 0.0 ? (dot(r, e) / lmax) * e : Vec2{};
        fit.degenerate = true;
    }
    Column defect(n);
    for (std::size_t i = 0; i < n; ++i) defect[i] = f.kappa_ss[i] + dot(fit.V, f.normal[i]);
    fit.residual = weighted_norm(defect, f.dl) / kappa_ss_scale(curve, f);
    return fit;
}

RotatorFit fit_rotator(const DiscreteCurve& curve) { return fit_rotator(curve, curve_fields(curve)); }

RotatorFit fit_rotator(const DiscreteCurve& curve, const CurveFields& f) {
    const std::size_t n = f.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 2.0 * dot(f.tangent[i], curve[i]);
        num += f.kappa_ss[i] * w * f.dl[i];
        den += w * w * f.dl[i];
    }
    const double len = total_length(f);
    RotatorFit fit;
    const double s = den < 1e-12 * len * len * len ? 0.0 : -num / den;
    if (den >= 1e-12 * len * len * len) fit.S = s;
    Column defect(n);
    for (std::size_t i = 0; i < n; ++i) defect[i] = f.kappa_ss[i] + 2.0 * s * dot(f.tangent[i], curve[i]);
    fit.residual = weighted_norm(defect, f.dl) / kappa_ss_scale(curve, f);
    return fit;
}

namespace {

template <class Fit, class Fn>
FitOutcome<Fit> attempt(Fn&& fn) {
    FitOutcome<Fit> out;
    try {
        out.fit = fn();
    } catch (const Error& e) {
        out.unavailable = e.what();
    }
    return out;
}

}  // namespace

SolitonReport classify(const DiscreteCurve& curve, double tol) {
    const CurveFields f = curve_fields(curve);
    SolitonReport report;
    report.stationary = attempt<StationaryFit>([&] { return fit_stationary(curve, f); });
    report.shrinker = attempt<ShrinkerFit>([&] { return fit_shrinker(curve, f); });
    report.translator = attempt<TranslatorFit>([&] { return fit_translator(curve, f); });
    report.rotator = attempt<RotatorFit>([&] { return fit_rotator(curve, f); });

    struct Candidate {
        Verdict verdict;
        double residual;
    };
    std::vector<Candidate> candidates;  // already in priority order
    if (report.stationary.fit) candidates.push_back({Verdict::Stationary, report.stationary.fit->residual});
    if (report.shrinker.fit) {
        const auto& s = *report.shrinker.fit;
        const double len = total_length(f);
        // K L^4 is the dimensionless rate; a vanishing one is a translation,
        // which the centre columns of the shrinker fit also absorb.
        if (std::abs(s.K) * len * len * len * len > 1e-6) {
            candidates.push_back({s.K > 0.0 ? Verdict::Expander : Verdict::Shrinker, s.residual});
        }
    }
    if (report.translator.fit) candidates.push_back({Verdict::Translator, report.translator.fit->residual});
    if (report.rotator.fit && report.rotator.fit->S) candidates.push_back({Verdict::Rotator, report.rotator.fit->residual});

    double best = tol;
    for (const auto& c : candidates) {
        if (c.residual < tol) best = std::min(best, c.residual);
    }
    report.verdict = Verdict::None;
    for (const auto& c : candidates) {
        if (c.residual < tol && c.residual <= best + 1e-8) {
            report.verdict = c.verdict;
            break;
        }
    }
    return report;
}

}  // namespace curveflow
