#include "rotwave/quadrature.hpp"

#include "rotwave/errors.hpp"

#include <array>
#include <cmath>

namespace rotwave {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1,1], positive half (node 0 is the center).
constexpr std::array<double, 8> kGlNodes = {
    0.0,
    0.2011940939974345223006283,
    0.3941513470775633698972074,
    0.5709721726085388475372267,
    0.7244177313601700474161861,
    0.8482065834104272162006483,
    0.9372733924007059043077589,
    0.9879925180204854284895657,
};
constexpr std::array<double, 8> kGlWeights = {
    0.2025782419255612728806202,
    0.1984314853271115764561183,
    0.1861610000155622110268006,
    0.1662692058169939335532009,
    0.1395706779261543144478048,
    0.1071592204671719350118695,
    0.0703660474881081247092674,
    0.0307532419961172683546284,
};

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = kGlWeights[0] * f(mid);
    for (int k = 1; k < 8; ++k) {
        const double dx = half * kGlNodes[k];
        sum += kGlWeights[k] * (f(mid + dx) + f(mid - dx));
    }
    return half * sum;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss15(f, a, mid);
    const double right = gauss15(f, mid, b);
    if (!std::isfinite(left) || !std::isfinite(right)) {
        throw NumericError("integrate_adaptive: non-finite integrand value");
    }
    const double split = left + right;
    if (depth <= 0 || std::abs(split - whole) <= tol) {
        return split;
    }
    return adapt(f, a, mid, left, 0.5 * tol, depth - 1) +
           adapt(f, mid, b, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_doublings) {
    if (a == b) return 0.0;
    int panels = 1;
    double prev = gauss15(f, a, b);
    if (!std::isfinite(prev)) throw NumericError("integrate_smooth: non-finite integrand value");
    for (int pass = 0; pass < max_doublings; ++pass) {
        panels *= 2;
        const double w = (b - a) / panels;
        double cur = 0.0;
        for (int k = 0; k < panels; ++k) {
            cur += gauss15(f, a + k * w, a + (k + 1) * w);
        }
        if (!std::isfinite(cur)) throw NumericError("integrate_smooth: non-finite integrand value");
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    return prev;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const double whole = gauss15(f, a, b);
    if (!std::isfinite(whole)) throw NumericError("integrate_adaptive: non-finite integrand value");
    const double tol = rel_tol * std::max(std::abs(whole), 1.0e-30) + 1e-300;
    return adapt(f, a, b, whole, tol, max_depth);
}

} // namespace rotwave
