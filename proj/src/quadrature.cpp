#include "qcnt/quadrature.hpp"
#include "qcnt/errors.hpp"

#include <cmath>

namespace qcnt {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kNodes[15] = {
    -0.98799251802048542848956571858661, -0.93727339240070590430775894771021,
    -0.84820658341042721620064832077421, -0.72441773136017004741618605461394,
    -0.57097217260853884753722673725391, -0.39415134707756336989720737098105,
    -0.20119409399743452230062830339460, 0.0,
    0.20119409399743452230062830339460,  0.39415134707756336989720737098105,
    0.57097217260853884753722673725391,  0.72441773136017004741618605461394,
    0.84820658341042721620064832077421,  0.93727339240070590430775894771021,
    0.98799251802048542848956571858661};
constexpr double kWeights[15] = {
    0.03075324199611726835462839357720, 0.07036604748810812470926741645066,
    0.10715922046717193501186954668587, 0.13957067792615431444780479451103,
    0.16626920581699393355320086048121, 0.18616100001556221102680056186642,
    0.19843148532711157645611832644384, 0.20257824192556127288062019996752,
    0.19843148532711157645611832644384, 0.18616100001556221102680056186642,
    0.16626920581699393355320086048121, 0.13957067792615431444780479451103,
    0.10715922046717193501186954668587, 0.07036604748810812470926741645066,
    0.03075324199611726835462839357720};

double gl15(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 15; ++i) s += kWeights[i] * f(mid + half * kNodes[i]);
    return s * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double tol, int depth) {
    double mid = 0.5 * (a + b);
    double left = gl15(f, a, mid), right = gl15(f, mid, b);
    double err = std::abs(left + right - whole);
    if (err < tol || depth > 40) return left + right;
    return adapt(f, a, mid, left, tol * 0.5, depth + 1) +
           adapt(f, mid, b, right, tol * 0.5, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
    if (a == b) return 0;
    double whole = gl15(f, a, b);
    double tol = std::max(abs_tol, rel_tol * std::abs(whole));
    return adapt(f, a, b, whole, tol, 0);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double t_max, double abs_tol) {
    double total = 0;
    double left = a;
    double width = 1.0;
    while (left < t_max) {
        double right = std::min(left + width, t_max);
        double piece = integrate(f, left, right, abs_tol, 1e-12);
        total += piece;
        if (std::abs(piece) < abs_tol && right - left >= 1.0) break;
        left = right;
        width *= 2;
    }
    return total;
}

}  // namespace qcnt
