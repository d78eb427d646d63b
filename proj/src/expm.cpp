// expm.cpp - scaling-and-squaring Pade approximant for the matrix exponential
//
// Degree selection and theta bounds follow the standard double-precision
// table; the degree-13 branch uses the factored U/V evaluation so the whole
// core costs six multiplies plus one solve before squaring.

#include "pathsum/expm.hpp"

#include <cmath>

#include "pathsum/errors.hpp"

namespace pathsum {
namespace {

// max ||A||_1 admitted by the Pade approximant of each degree
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const CMatrix& a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

CMatrix pade_solve(const CMatrix& u, const CMatrix& v) {
    // r = (v - u)^{-1} (v + u)
    return (v - u).partialPivLu().solve(v + u);
}

CMatrix pade_low(const CMatrix& a, const double* b, int m) {
    const auto n = a.rows();
    const CMatrix ident = CMatrix::Identity(n, n);
    const CMatrix a2 = a * a;
    CMatrix even = b[0] * ident;
    CMatrix odd = b[1] * ident;
    CMatrix a2k = ident;
    for (int k = 1; 2 * k <= m; ++k) {
        a2k = a2k * a2;
        even += b[2 * k] * a2k;
        if (2 * k + 1 <= m) odd += b[2 * k + 1] * a2k;
    }
    return pade_solve(a * odd, even);
}

CMatrix pade13(const CMatrix& a) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const auto n = a.rows();
    const CMatrix ident = CMatrix::Identity(n, n);
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a4 * a2;
    const CMatrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * ident);
    const CMatrix v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
        b[0] * ident;
    return pade_solve(u, v);
}

}  // namespace

CMatrix expm(const CMatrix& a) {
    if (a.rows() != a.cols()) throw validation_error("expm: matrix must be square");
    if (a.rows() == 0) return a;
    if (!a.allFinite()) throw validation_error("expm: matrix has non-finite entries");

    const double nrm = one_norm(a);
    static const double b3[] = {120.0, 60.0, 12.0, 1.0};
    static const double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static const double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                25200.0,    1512.0,    56.0,      1.0};
    static const double b9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                30270240.0,    2162160.0,    110880.0,     3960.0,
                                90.0,          1.0};

    if (nrm <= kTheta3) return pade_low(a, b3, 3);
    if (nrm <= kTheta5) return pade_low(a, b5, 5);
    if (nrm <= kTheta7) return pade_low(a, b7, 7);
    if (nrm <= kTheta9) return pade_low(a, b9, 9);

    int s = 0;
    if (nrm > kTheta13) s = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
    CMatrix scaled = a / std::pow(2.0, s);
    CMatrix f = pade13(scaled);
    for (int i = 0; i < s; ++i) f = f * f;
    return f;
}

CMatrix dense_exp(const CMatrix& h, double t) {
    if (h.rows() != h.cols()) throw validation_error("dense_exp: matrix must be square");
    return expm((-kImagUnit * t) * h);
}

}  // namespace pathsum
