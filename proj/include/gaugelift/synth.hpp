/// @file synth.hpp
/// @brief Seeded analytic test fields: smooth connections, Lipschitz "kink"
///        gauge fields with a derivative jump, and their combinations.
///
/// A FieldSpec is resolution independent: it carries closed-form evaluators
/// that can be sampled onto any grid (0-forms at vertices, 1-form components
/// at edge midpoints). The `zoom` fields re-read the field on a centered
/// sub-box with values unchanged, which is how coordinate rescaling is
/// realized.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaugelift/forms.hpp"
#include "gaugelift/gauge.hpp"

namespace gaugelift {

enum class FieldKind {
    smooth,      // smooth algebra-valued connection
    constant,    // constant algebra-valued connection
    pure_gauge,  // A = U^{-1} dU for a kink gauge field U (optimal form = 0)
    paired,      // A = U^{-1} dU + U^{-1} A_b U, smooth A_b + kink U
};

struct SmoothParams {
    std::string profile = "sine";  // "sine" (boundary-vanishing) or "gauss"
    std::array<double, kMaxDim> center{0.5, 0.5, 0.5};
    double width = 0.12;  // gauss profile width
};

/// Continuous piecewise-multilinear scalar phi with a gradient jump across
/// the hyperplane x[axis] = pos, vanishing in a collar near the boundary.
struct KinkParams {
    int axis = 0;
    double pos = 0.5;
    double width = 0.15;    // half-width of the hat profile
    double collar = 0.125;  // boundary collar where phi == 0
};

struct FieldSpec {
    FieldKind kind = FieldKind::smooth;
    Signature sig{2, 0};
    double amplitude = 0.1;        // scale of the connection / background
    double gauge_amplitude = 0.0;  // scale of the kink gauge exponent
    std::uint64_t seed = 0;
    SmoothParams smooth;
    KinkParams kink;
    double zoom = 1.0;  // evaluate at center + zoom*(x - center)
    std::array<double, kMaxDim> zoom_center{0.5, 0.5, 0.5};
};

FieldSpec make_smooth_connection(const Signature& sig, double amplitude, std::uint64_t seed);
FieldSpec make_constant_connection(const Signature& sig, double amplitude, std::uint64_t seed);
/// Kink gauge field U = exp(phi G); the associated pure-gauge connection.
FieldSpec make_rough_gauge(const Signature& sig, double gauge_amplitude, std::uint64_t seed);
/// Smooth background A_b conjugated into the kink gauge:
/// A = U^{-1} dU + U^{-1} A_b U. The optimal form of A is (a conjugate of)
/// A_b, so the pipeline should recover its smoothness class.
FieldSpec make_nonoptimal_pair(const Signature& sig, double amplitude, double gauge_amplitude,
                               std::uint64_t seed);
/// The smooth background of a paired/pure-gauge field: same seed-derived
/// parameters with the gauge part removed (the ground truth the pipeline
/// should recover up to conjugation).
FieldSpec background_of(const FieldSpec& spec);

/// Closed-form evaluation at a point: 1-form components (n blocks of N*N,
/// row-major) and the gauge field / scalar kink exponent.
void eval_connection(const FieldSpec& spec, const std::array<double, kMaxDim>& x, int n, double* out);
void eval_gauge(const FieldSpec& spec, const std::array<double, kMaxDim>& x, int n, double* out);
double eval_kink_phi(const FieldSpec& spec, const std::array<double, kMaxDim>& x, int n);

/// Sample the connection onto a grid: component a at the a-edge midpoints.
/// For fields with a rough pure-gauge part, that part is sampled as the exact
/// difference quotient of the vertex-sampled kink profile (not the analytic
/// derivative at the midpoint), so the sampled rough term is a genuine
/// discrete gradient and carries no spurious curl.
MatrixForm sample_connection(const FieldSpec& spec, const Grid& g);
/// Sample the closed-form gauge field at the vertices.
MatrixForm sample_gauge(const FieldSpec& spec, const Grid& g);

/// Re-read the field on the centered sub-box of side `eps`, values unchanged.
FieldSpec rescale_spec(const FieldSpec& spec, double eps);

/// `count` seeded kink members, each verified on `check_grid` to satisfy
/// |A|_Linf + |ext_d A|_Lp <= M_bound (throws if the construction violates
/// the bound).
std::vector<FieldSpec> make_sequence(const Signature& sig, double M_bound, int count, double p,
                                     std::uint64_t seed, const Grid& check_grid);

}  // namespace gaugelift
