//! Discrete convex analysis on grids: Legendre transforms, convexification,
//! subgradient sets, touching sets and strict-convexity detection.

use crate::error::{Error, Result};
use crate::geom::{convex_hull, polygon_area, v2, Vec2};
use crate::grid::{Extension, Grid, ScalarField};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rounding {
    Nearest,
    Up,
    Down,
}

/// Discrete conjugate max_i (p*ys[i] - fs[i]) for each slope p in `ps`
/// (ascending), via one lower-hull pass and a linear sweep.
///
/// Collinear hull middles are dropped; on equal cross products the earlier
/// node is kept. Up/Down bias every arithmetic step outward, used by the
/// convexification loop.
fn conjugate_1d(ys: &[f64], fs: &[f64], ps: &[f64], r: Rounding) -> Vec<f64> {
    let n = ys.len();
    debug_assert_eq!(n, fs.len());
    let mut hull: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // pop b when slope(a,b) >= slope(b,i)
            if (fs[b] - fs[a]) * (ys[i] - ys[b]) >= (fs[i] - fs[b]) * (ys[b] - ys[a]) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let term = |p: f64, i: usize| -> f64 {
        match r {
            Rounding::Nearest => p * ys[i] - fs[i],
            Rounding::Up => ((p * ys[i]).next_up() - fs[i]).next_up(),
            Rounding::Down => ((p * ys[i]).next_down() - fs[i]).next_down(),
        }
    };
    let mut out = Vec::with_capacity(ps.len());
    let mut k = 0usize;
    for &p in ps {
        while k + 1 < hull.len() && term(p, hull[k + 1]) >= term(p, hull[k]) {
            k += 1;
        }
        out.push(term(p, hull[k]));
    }
    out
}

/// Raw transform of grid values onto a dual grid, no coverage check.
fn transform(values: &[f64], grid: &Grid, dual: &Grid, r: Rounding) -> Vec<f64> {
    if grid.dim == 1 {
        let ys = grid.axis_coords(0);
        let ps = dual.axis_coords(0);
        return conjugate_1d(&ys, values, &ps, r);
    }
    let (n0, n1) = (grid.n[0], grid.n[1]);
    let (m0, m1) = (dual.n[0], dual.n[1]);
    let y0 = grid.axis_coords(0);
    let y1 = grid.axis_coords(1);
    let p0 = dual.axis_coords(0);
    let p1 = dual.axis_coords(1);
    // pass 1: conjugate along axis 1 for each fixed y0 row
    let mut mid = vec![0.0f64; n0 * m1];
    for i0 in 0..n0 {
        let row = &values[i0 * n1..(i0 + 1) * n1];
        let h = conjugate_1d(&y1, row, &p1, r);
        mid[i0 * m1..(i0 + 1) * m1].copy_from_slice(&h);
    }
    // pass 2: conjugate along axis 0 for each fixed p1 column, input -h
    let mut out = vec![0.0f64; m0 * m1];
    let mut col = vec![0.0f64; n0];
    for j1 in 0..m1 {
        for i0 in 0..n0 {
            col[i0] = -mid[i0 * m1 + j1];
        }
        let g = conjugate_1d(&y0, &col, &p0, r);
        for (j0, v) in g.into_iter().enumerate() {
            out[j0 * m1 + j1] = v;
        }
    }
    out
}

/// How much of the slope range a dual grid must span.
enum Coverage {
    /// The dual grid must overlap the slope range (plain transforms; the
    /// conjugate is exact for the discrete problem at any queried slope).
    Overlap,
    /// The dual grid must contain the whole slope range (convexification;
    /// missing slopes would cut affine minorants out of the envelope).
    Full,
}

fn check_coverage(f: &ScalarField, dual: &Grid, need: Coverage) -> Result<()> {
    if dual.dim != f.grid.dim {
        return Err(Error::InvalidInput(format!(
            "dual grid dim {} does not match field dim {}",
            dual.dim, f.grid.dim
        )));
    }
    for a in 0..f.grid.dim {
        let (lo, hi) = f.slope_range(a);
        let tol = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
        let bad = match need {
            Coverage::Overlap => dual.hi[a] < lo - tol || dual.lo[a] > hi + tol,
            Coverage::Full => dual.lo[a] > lo + tol || dual.hi[a] < hi - tol,
        };
        if bad {
            return Err(Error::DualGridTooNarrow {
                axis: a,
                dual_lo: dual.lo[a],
                dual_hi: dual.hi[a],
                slope_lo: lo,
                slope_hi: hi,
            });
        }
    }
    Ok(())
}

/// Dual grid covering the discrete slope range of f, padded by 5%,
/// with the same node counts as the primal grid.
pub fn auto_dual_grid(f: &ScalarField) -> Grid {
    let g = &f.grid;
    let mut lo = [0.0; 2];
    let mut hi = [0.0; 2];
    for a in 0..g.dim {
        let (slo, shi) = f.slope_range(a);
        let pad = 0.05 * (shi - slo).max(1e-9);
        lo[a] = slo - pad;
        hi[a] = shi + pad;
    }
    Grid {
        dim: g.dim,
        lo,
        hi,
        n: g.n,
    }
}

/// Discrete Legendre transform f*(p) = max over grid nodes y of (p.y - f(y)).
pub fn legendre_1d(f: &ScalarField, dual: &Grid) -> Result<ScalarField> {
    if f.grid.dim != 1 {
        return Err(Error::InvalidInput("legendre_1d expects a 1D field".into()));
    }
    check_coverage(f, dual, Coverage::Overlap)?;
    let vals = transform(&f.values, &f.grid, dual, Rounding::Nearest);
    ScalarField::new(*dual, vals, Extension::AffineExtrapolate)
}

/// 2D transform factored into iterated 1D transforms (axis 1 inside, then
/// axis 0), equal to the direct double-loop sup with the same term grouping.
pub fn legendre_2d(f: &ScalarField, dual: &Grid) -> Result<ScalarField> {
    if f.grid.dim != 2 {
        return Err(Error::InvalidInput("legendre_2d expects a 2D field".into()));
    }
    check_coverage(f, dual, Coverage::Overlap)?;
    let vals = transform(&f.values, &f.grid, dual, Rounding::Nearest);
    ScalarField::new(*dual, vals, Extension::AffineExtrapolate)
}

pub fn legendre(f: &ScalarField, dual: &Grid) -> Result<ScalarField> {
    match f.grid.dim {
        1 => legendre_1d(f, dual),
        _ => legendre_2d(f, dual),
    }
}

const CONVEXIFY_SWEEP_CAP: usize = 60;

/// Convexification f** as the double Legendre transform over a fixed dual
/// grid, iterated with an elementwise min until the values are a bitwise
/// fixed point. The fixed-point form makes a repeated call with the same
/// grids reproduce its input exactly, and guarantees f** <= f node-wise.
pub fn convexify_with_dual(f: &ScalarField, dual: &Grid) -> Result<ScalarField> {
    check_coverage(f, dual, Coverage::Full)?;
    let mut x = f.values.clone();
    for _ in 0..CONVEXIFY_SWEEP_CAP {
        let fstar_low = transform(&x, &f.grid, dual, Rounding::Down);
        let back_high = transform(&fstar_low, dual, &f.grid, Rounding::Up);
        let mut changed = false;
        for (xi, bi) in x.iter_mut().zip(back_high.iter()) {
            if *bi < *xi {
                *xi = *bi;
                changed = true;
            }
        }
        if !changed {
            return ScalarField::new(f.grid, x, f.extension);
        }
    }
    Err(Error::ConvexifyNotStabilized(CONVEXIFY_SWEEP_CAP))
}

/// Convexification with an automatically selected dual grid.
pub fn convexify(f: &ScalarField) -> Result<ScalarField> {
    let dual = auto_dual_grid(f);
    convexify_with_dual(f, &dual)
}

/// Set of supporting-plane slopes at a point.
#[derive(Clone, Debug, PartialEq)]
pub enum SubgradientSet {
    /// 1D: the interval [left slope, right slope].
    Interval { lo: f64, hi: f64 },
    /// 2D: convex polygon in counterclockwise order; a single vertex or a
    /// pair of vertices encodes a degenerate (point / segment) set.
    Polygon { vertices: Vec<Vec2> },
}

impl SubgradientSet {
    pub fn dim(&self) -> usize {
        match self {
            SubgradientSet::Interval { .. } => 1,
            SubgradientSet::Polygon { .. } => 2,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        match self {
            SubgradientSet::Interval { lo, hi } => lo == hi,
            SubgradientSet::Polygon { vertices } => {
                vertices.len() < 3 || polygon_area(vertices) <= 0.0
            }
        }
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        match self {
            SubgradientSet::Interval { lo, hi } => p[0] >= lo - tol && p[0] <= hi + tol,
            SubgradientSet::Polygon { vertices } => {
                crate::geom::point_in_convex_polygon(Vec2::from_slice(p), vertices, tol)
            }
        }
    }

    pub fn distance_to(&self, p: &[f64]) -> f64 {
        match self {
            SubgradientSet::Interval { lo, hi } => {
                if p[0] < *lo {
                    lo - p[0]
                } else if p[0] > *hi {
                    p[0] - hi
                } else {
                    0.0
                }
            }
            SubgradientSet::Polygon { vertices } => {
                crate::geom::dist_point_convex_polygon(Vec2::from_slice(p), vertices)
            }
        }
    }

    pub fn hausdorff(&self, other: &SubgradientSet) -> f64 {
        match (self, other) {
            (SubgradientSet::Interval { lo: a, hi: b }, SubgradientSet::Interval { lo: c, hi: d }) => {
                (a - c).abs().max((b - d).abs())
            }
            (SubgradientSet::Polygon { vertices: a }, SubgradientSet::Polygon { vertices: b }) => {
                crate::geom::hausdorff_convex(a, b)
            }
            _ => f64::INFINITY,
        }
    }
}

impl Serialize for SubgradientSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SubgradientSet", 2)?;
        match self {
            SubgradientSet::Interval { lo, hi } => {
                st.serialize_field("dim", &1)?;
                st.serialize_field("vertices", &vec![vec![*lo], vec![*hi]])?;
            }
            SubgradientSet::Polygon { vertices } => {
                st.serialize_field("dim", &2)?;
                let vs: Vec<Vec<f64>> = vertices.iter().map(|v| vec![v.x, v.y]).collect();
                st.serialize_field("vertices", &vs)?;
            }
        }
        st.end()
    }
}

/// Subgradient of a (convexified) grid field at a point strictly inside the
/// grid. 1D: one-sided slopes at the bracketing node or segment. 2D: convex
/// hull of the one-sided discrete gradients of the cells incident to x,
/// collapsed to a singleton when the spread is at grid resolution.
pub fn subgradient_at(f_convex: &ScalarField, x: &[f64]) -> Result<SubgradientSet> {
    let g = &f_convex.grid;
    for a in 0..g.dim {
        if x[a] <= g.lo[a] || x[a] >= g.hi[a] {
            return Err(Error::OutsideGrid(x.to_vec()));
        }
    }
    if g.dim == 1 {
        let h = g.spacing(0);
        let s = (x[0] - g.lo[0]) / h;
        let i = s.round() as usize;
        let snap = 1e-9_f64.max(1e-9 * s.abs());
        if (s - i as f64).abs() <= snap && i > 0 && i + 1 < g.n[0] {
            let lo = (f_convex.values[i] - f_convex.values[i - 1]) / h;
            let hi = (f_convex.values[i + 1] - f_convex.values[i]) / h;
            return Ok(SubgradientSet::Interval { lo, hi: hi.max(lo) });
        }
        let i = (s.floor() as usize).min(g.n[0] - 2);
        let sl = (f_convex.values[i + 1] - f_convex.values[i]) / h;
        return Ok(SubgradientSet::Interval { lo: sl, hi: sl });
    }

    // 2D: cells whose closed extent contains x (within a snap tolerance)
    let h0 = g.spacing(0);
    let h1 = g.spacing(1);
    let snap = 1e-9;
    let mut grads: Vec<Vec2> = Vec::new();
    let s0 = (x[0] - g.lo[0]) / h0;
    let s1 = (x[1] - g.lo[1]) / h1;
    let cell_range = |s: f64, n: usize| -> (usize, usize) {
        let lo = ((s - snap).floor() as isize).clamp(0, n as isize - 2) as usize;
        let hi = ((s + snap).floor() as isize).clamp(0, n as isize - 2) as usize;
        (lo, hi)
    };
    let (c0lo, c0hi) = cell_range(s0, g.n[0]);
    let (c1lo, c1hi) = cell_range(s1, g.n[1]);
    for i in c0lo..=c0hi {
        for j in c1lo..=c1hi {
            let f00 = f_convex.at(i, j);
            let f10 = f_convex.at(i + 1, j);
            let f01 = f_convex.at(i, j + 1);
            let f11 = f_convex.at(i + 1, j + 1);
            let gx = [(f10 - f00) / h0, (f11 - f01) / h0];
            let gy = [(f01 - f00) / h1, (f11 - f10) / h1];
            for &a in &gx {
                for &b in &gy {
                    grads.push(v2(a, b));
                }
            }
        }
    }
    let hull = convex_hull(grads);
    let diam = hull
        .iter()
        .flat_map(|p| hull.iter().map(move |q| (*p - *q).norm()))
        .fold(0.0f64, f64::max);
    if diam <= 4.0 * h0.max(h1) {
        let n = hull.len() as f64;
        let c = hull
            .iter()
            .fold(v2(0.0, 0.0), |acc, p| acc + *p)
            * (1.0 / n);
        return Ok(SubgradientSet::Polygon { vertices: vec![c] });
    }
    Ok(SubgradientSet::Polygon { vertices: hull })
}

#[derive(Clone, Debug)]
pub struct TouchingMasks {
    /// Nodes where f agrees with its convexification within tol.
    pub touching: Vec<bool>,
    /// Interior nodes where the discrete Hessian of f_cvx is uniformly
    /// positive (minimum eigenvalue >= tol_strict).
    pub strictly_convex: Vec<bool>,
}

/// Default touching tolerance 10 * spacing^2 * (local curvature scale).
pub fn default_touching_tol(f_cvx: &ScalarField) -> f64 {
    let g = &f_cvx.grid;
    let h = g.max_spacing();
    let mut curv: Vec<f64> = Vec::new();
    for i in 1..g.n[0].saturating_sub(1) {
        for j in 0..g.n[1] {
            curv.push(((f_cvx.at(i + 1, j) - 2.0 * f_cvx.at(i, j) + f_cvx.at(i - 1, j))
                / (g.spacing(0) * g.spacing(0)))
            .abs());
        }
    }
    if g.dim == 2 {
        for i in 0..g.n[0] {
            for j in 1..g.n[1] - 1 {
                curv.push(((f_cvx.at(i, j + 1) - 2.0 * f_cvx.at(i, j) + f_cvx.at(i, j - 1))
                    / (g.spacing(1) * g.spacing(1)))
                .abs());
            }
        }
    }
    curv.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale = if curv.is_empty() {
        1.0
    } else {
        curv[curv.len() / 2].max(1.0)
    };
    10.0 * h * h * scale
}

/// Minimum eigenvalue of the discrete Hessian at an interior node
/// (second difference in 1D).
pub fn hessian_min_eig(f: &ScalarField, i: usize, j: usize) -> f64 {
    let g = &f.grid;
    let h0 = g.spacing(0);
    let fxx = (f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j)) / (h0 * h0);
    if g.dim == 1 {
        return fxx;
    }
    let h1 = g.spacing(1);
    let fyy = (f.at(i, j + 1) - 2.0 * f.at(i, j) + f.at(i, j - 1)) / (h1 * h1);
    let fxy = (f.at(i + 1, j + 1) - f.at(i + 1, j - 1) - f.at(i - 1, j + 1) + f.at(i - 1, j - 1))
        / (4.0 * h0 * h1);
    0.5 * (fxx + fyy) - (0.25 * (fxx - fyy) * (fxx - fyy) + fxy * fxy).sqrt()
}

pub fn touching_masks(
    f: &ScalarField,
    f_cvx: &ScalarField,
    tol: f64,
    tol_strict: f64,
) -> TouchingMasks {
    let g = &f.grid;
    let touching = f
        .values
        .iter()
        .zip(f_cvx.values.iter())
        .map(|(a, b)| a - b <= tol)
        .collect();
    let mut strictly_convex = vec![false; g.len()];
    let interior = |i: usize, n: usize| i > 0 && i + 1 < n;
    for i in 0..g.n[0] {
        for j in 0..g.n[1] {
            let ok = interior(i, g.n[0]) && (g.dim == 1 || interior(j, g.n[1]));
            if ok && hessian_min_eig(f_cvx, i, j) >= tol_strict {
                strictly_convex[g.index(i, j)] = true;
            }
        }
    }
    TouchingMasks {
        touching,
        strictly_convex,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn field_1d(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> ScalarField {
        ScalarField::from_fn(Grid::new_1d(lo, hi, n).unwrap(), |p| f(p[0]))
    }

    #[test]
    fn quadratic_is_self_dual() {
        let f = field_1d(-3.0, 3.0, 2001, |y| 0.5 * y * y);
        let dual = Grid::new_1d(-1.0, 1.0, 401).unwrap();
        let fs = legendre_1d(&f, &dual).unwrap();
        let err = (0..dual.n[0])
            .map(|k| {
                let x = dual.coord(0, k);
                (fs.values[k] - 0.5 * x * x).abs()
            })
            .fold(0.0f64, f64::max);
        assert!(err < 5e-6, "sup error {err}");
    }

    #[test]
    fn double_well_conjugate_closed_form() {
        // psi_t for 1D velocities +-1 at t = 1; dual inside the faithful
        // slope range so the discrete sup never saturates at the boundary
        let f = field_1d(-3.0, 3.0, 2001, |y| 0.5 * y * y - y.abs());
        let dual = Grid::new_1d(-1.8, 1.8, 721).unwrap();
        let fs = legendre_1d(&f, &dual).unwrap();
        let err = (0..dual.n[0])
            .map(|k| {
                let x = dual.coord(0, k);
                (fs.values[k] - 0.5 * (x.abs() + 1.0) * (x.abs() + 1.0)).abs()
            })
            .fold(0.0f64, f64::max);
        assert!(err < 2e-5, "sup error {err}");
    }

    #[test]
    fn constant_gives_support_function() {
        let c = 0.7;
        let f = field_1d(-2.0, 1.0, 31, |_| c);
        let dual = Grid::new_1d(-1.0, 1.0, 21).unwrap();
        let fs = legendre_1d(&f, &dual).unwrap();
        for k in 0..dual.n[0] {
            let x = dual.coord(0, k);
            let want = (x * -2.0 - c).max(x * 1.0 - c);
            assert!((fs.values[k] - want).abs() < 1e-14);
        }
    }

    #[test]
    fn inadequate_dual_grids_rejected() {
        let f = field_1d(-3.0, 3.0, 101, |y| 0.5 * y * y);
        // a dual grid disjoint from the slope range is useless for the transform
        let far = Grid::new_1d(10.0, 20.0, 11).unwrap();
        assert!(matches!(
            legendre_1d(&f, &far),
            Err(Error::DualGridTooNarrow { .. })
        ));
        // convexification needs the dual to contain the whole slope range
        let narrow = Grid::new_1d(-1.0, 1.0, 11).unwrap();
        assert!(matches!(
            convexify_with_dual(&f, &narrow),
            Err(Error::DualGridTooNarrow { .. })
        ));
    }

    #[test]
    fn factored_2d_equals_double_loop() {
        let g = Grid::new_2d([-1.0, -1.5], [1.2, 1.0], [41, 37]).unwrap();
        let f = ScalarField::from_fn(g, |p| {
            0.5 * (p[0] * p[0] + p[1] * p[1]) + 0.3 * (p[0] - 0.2 * p[1]).min(0.1 * p[1])
        });
        let dual = auto_dual_grid(&f);
        let fs = legendre_2d(&f, &dual).unwrap();
        // brute double loop with the same term grouping and reduction order
        for j0 in 0..dual.n[0] {
            for j1 in 0..dual.n[1] {
                let p0 = dual.coord(0, j0);
                let p1 = dual.coord(1, j1);
                let mut best = f64::NEG_INFINITY;
                for i0 in 0..g.n[0] {
                    let y0 = g.coord(0, i0);
                    for i1 in 0..g.n[1] {
                        let y1 = g.coord(1, i1);
                        let inner = p1 * y1 - f.at(i0, i1);
                        let v = p0 * y0 - (-inner);
                        if v >= best {
                            best = v;
                        }
                    }
                }
                assert_eq!(
                    fs.at(j0, j1).to_bits(),
                    best.to_bits(),
                    "mismatch at ({j0},{j1})"
                );
            }
        }
    }

    #[test]
    fn separable_splits_into_1d_transforms() {
        let g = Grid::new_2d([-1.0, -1.0], [1.0, 1.0], [51, 51]).unwrap();
        let gf = |y: f64| 0.5 * y * y + 0.2 * y;
        let hf = |y: f64| y.abs();
        let f = ScalarField::from_fn(g, |p| gf(p[0]) + hf(p[1]));
        let dual = auto_dual_grid(&f);
        let fs = legendre_2d(&f, &dual).unwrap();
        let g1 = field_1d(-1.0, 1.0, 51, gf);
        let h1 = field_1d(-1.0, 1.0, 51, hf);
        let d0 = Grid::new_1d(dual.lo[0], dual.hi[0], dual.n[0]).unwrap();
        let d1 = Grid::new_1d(dual.lo[1], dual.hi[1], dual.n[1]).unwrap();
        let gs = legendre_1d(&g1, &d0).unwrap();
        let hs = legendre_1d(&h1, &d1).unwrap();
        for j0 in 0..dual.n[0] {
            for j1 in 0..dual.n[1] {
                let want = gs.values[j0] + hs.values[j1];
                assert!((fs.at(j0, j1) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn convexify_double_well() {
        let f = field_1d(-3.0, 3.0, 1501, |y| 0.5 * y * y - y.abs());
        let c = convexify(&f).unwrap();
        for k in 0..f.grid.len() {
            let y = f.grid.coord(0, k);
            let want = if y.abs() <= 1.0 {
                -0.5
            } else {
                0.5 * y * y - y.abs()
            };
            assert!((c.values[k] - want).abs() < 5e-5, "at y={y}");
            assert!(c.values[k] <= f.values[k]);
        }
    }

    #[test]
    fn convexify_fixes_convex_input() {
        let f = field_1d(-2.0, 2.0, 401, |y| (0.3 * y).cosh());
        let c = convexify(&f).unwrap();
        // a finite dual lattice can miss a node's narrow subdifferential,
        // dropping the biconjugate by O(dual spacing^2 / curvature)
        let max_drop = f
            .values
            .iter()
            .zip(&c.values)
            .map(|(a, b)| a - b)
            .fold(0.0f64, f64::max);
        assert!(max_drop < 1e-5, "convex input moved by {max_drop}");
    }

    #[test]
    fn convexify_idempotent_bitwise() {
        for field in [
            field_1d(-3.0, 3.0, 801, |y| 0.5 * y * y - y.abs()),
            field_1d(-2.0, 2.0, 501, |y| (y * 3.0).sin() + 0.2 * y * y),
        ] {
            let dual = auto_dual_grid(&field);
            let c1 = convexify_with_dual(&field, &dual).unwrap();
            let c2 = convexify_with_dual(&c1, &dual).unwrap();
            assert!(c1
                .values
                .iter()
                .zip(&c2.values)
                .all(|(a, b)| a.to_bits() == b.to_bits()));
        }
        // 2D
        let g = Grid::square(-2.0, 2.0, 81).unwrap();
        let vs = [v2(1.8, 0.0), v2(2.5, 1.5), v2(0.0, 0.0)];
        let t = 0.3;
        let f = ScalarField::from_fn(g, |p| {
            let y = v2(p[0], p[1]);
            0.5 * y.norm2() + t * vs.iter().map(|v| v.dot(y)).fold(f64::INFINITY, f64::min)
        });
        let dual = auto_dual_grid(&f);
        let c1 = convexify_with_dual(&f, &dual).unwrap();
        let c2 = convexify_with_dual(&c1, &dual).unwrap();
        assert!(c1
            .values
            .iter()
            .zip(&c2.values)
            .all(|(a, b)| a.to_bits() == b.to_bits()));
        // below f and convex along grid lines
        for k in 0..g.len() {
            assert!(c1.values[k] <= f.values[k]);
        }
    }

    #[test]
    fn subgradient_interval_for_shock_potential() {
        // w_t for 1D velocities +-1 at t = 1: w(x) = (|x| + 1)^2 / 2
        let w = field_1d(-3.0, 3.0, 1201, |x| 0.5 * (x.abs() + 1.0) * (x.abs() + 1.0));
        match subgradient_at(&w, &[0.0]).unwrap() {
            SubgradientSet::Interval { lo, hi } => {
                assert!((lo + 1.0).abs() < 5e-3, "lo {lo}");
                assert!((hi - 1.0).abs() < 5e-3, "hi {hi}");
            }
            _ => panic!("expected interval"),
        }
        // smooth quadratic: singleton slope x
        let q = field_1d(-2.0, 2.0, 401, |x| 0.5 * x * x);
        match subgradient_at(&q, &[0.37]).unwrap() {
            SubgradientSet::Interval { lo, hi } => {
                assert!((0.5 * (lo + hi) - 0.37).abs() < 1e-2);
                assert!(hi - lo < 2e-2);
            }
            _ => panic!("expected interval"),
        }
    }

    #[test]
    fn young_inequality_and_equality_cases() {
        let f = field_1d(-3.0, 3.0, 601, |y| 0.5 * y * y - y.abs());
        let dual = auto_dual_grid(&f);
        let fs = legendre_1d(&f, &dual).unwrap();
        let tol = 1e-12;
        for k in (0..dual.n[0]).step_by(7) {
            let x = dual.coord(0, k);
            for i in (0..f.grid.n[0]).step_by(11) {
                let y = f.grid.coord(0, i);
                assert!(f.values[i] + fs.values[k] >= x * y - tol);
            }
        }
        // equality case: the maximizer attains Young equality
        let x = dual.coord(0, dual.n[0] / 3);
        let (mut best, mut arg) = (f64::NEG_INFINITY, 0);
        for i in 0..f.grid.n[0] {
            let y = f.grid.coord(0, i);
            let v = x * y - f.values[i];
            if v > best {
                best = v;
                arg = i;
            }
        }
        let y = f.grid.coord(0, arg);
        assert!((f.values[arg] + fs.values[dual.n[0] / 3] - x * y).abs() < 1e-12);
    }

    #[test]
    fn touching_masks_double_well() {
        let f = field_1d(-3.0, 3.0, 1001, |y| 0.5 * y * y - y.abs());
        let c = convexify(&f).unwrap();
        let tol = default_touching_tol(&c);
        let m = touching_masks(&f, &c, tol, 1e-6);
        let h = f.grid.spacing(0);
        // the gap (|y|-1)^2/2 clears the tolerance beyond sqrt(2 tol)
        let margin = (2.0 * tol).sqrt() + h;
        for i in 0..f.grid.n[0] {
            let y = f.grid.coord(0, i);
            if y.abs() > 1.0 + margin {
                assert!(m.touching[i], "expected touching at y={y}");
            }
            if y.abs() < 1.0 - margin {
                assert!(!m.touching[i], "expected non-touching at y={y}");
            }
        }
        // strict convexity implies touching
        for i in 0..f.grid.n[0] {
            if m.strictly_convex[i] {
                assert!(m.touching[i]);
            }
        }
    }
}
