#pragma once

// Central place for the numerical tolerances the pipeline promises.
namespace seamless::tol {

// conformal metric: max angle defect accepted (rad); Newton aims lower
inline constexpr double angle_defect = 1e-8;
inline constexpr double angle_defect_target = 1e-12;

// layout drift error threshold, relative to chart diameter
inline constexpr double layout_drift = 1e-6;

// equalization: residual of A w = b, absolute vs max |b|
inline constexpr double equalize_residual = 1e-10;
// safety margin added to the non-negativity shift, relative to max length
inline constexpr double width_margin = 1e-9;

// padding: constant-speed deviation, relative
inline constexpr double constant_speed = 1e-9;

// seamless check: max pre-snap rotation deviation (rad) to still pass
inline constexpr double rotation_snap = 1e-4;
// congruence residual relative to chart bounding-box diagonal
inline constexpr double congruence = 1e-6;
// realized cone angle tolerance (rad)
inline constexpr double cone_angle = 1e-6;

// optimizer: constraint residual relative to bounding box diagonal
inline constexpr double constraint_residual = 1e-10;
inline constexpr double opt_rel_decrease = 1e-7;
inline constexpr int opt_stall_iters = 5;

}  // namespace seamless::tol
