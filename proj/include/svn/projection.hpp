#pragma once

#include "svn/operator.hpp"

namespace svn {

struct LpBall {
    double p = 2.0;
    double radius = 1.0;

    LpBall() = default;
    LpBall(double p_, double radius_);
};

// lp norm of a vector, p in [1, inf].
double lp_norm(const Vec& v, double p);

// Euclidean projection of v onto { u : ||u||_p <= radius }. Feasible inputs
// are returned unchanged. tol bounds the relative constraint residual for
// the iterative 1 < p < inf path.
Vec project_lp(const Vec& v, const LpBall& ball, double tol = 1e-10);

// Frobenius-metric projection onto the Schatten ball: project the singular
// value vector with project_lp and reassemble the factors. Feasible
// operators come back with a bit-identical spectrum.
LinearOperator project_schatten(const LinearOperator& t, const SchattenBall& ball,
                                double tol = 1e-10);

// Same projection acting on a plain coordinate matrix (the ERM inner loop).
Mat project_schatten(const Mat& t, const SchattenBall& ball, double tol = 1e-10);

bool is_member(const LinearOperator& t, const SchattenBall& ball, double tol = 1e-10);
bool is_member(const Mat& t, const SchattenBall& ball, double tol = 1e-10);

}  // namespace svn
