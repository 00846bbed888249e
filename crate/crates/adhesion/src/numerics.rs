//! Shared numerical kernels: Gauss-Legendre rules, Gaussian probabilities
//! over intervals, half-planes and planar sectors, and their first moments.

use crate::geom::{v2, Vec2};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_eval(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_eval(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Standard normal density.
pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal CDF via erfc.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// P(l <= Z <= r) for standard normal Z, accurate in both tails.
pub fn norm_interval(l: f64, r: f64) -> f64 {
    if l >= r {
        return 0.0;
    }
    if l > 0.0 {
        // work in the upper tail: P = Phi(-l) - Phi(-r)
        0.5 * (libm::erfc(l / std::f64::consts::SQRT_2) - libm::erfc(r / std::f64::consts::SQRT_2))
    } else {
        (norm_cdf(r) - norm_cdf(l)).max(0.0)
    }
}

/// First moment of the standard normal over [l, r]: integral of z phi(z) dz.
pub fn norm_interval_moment(l: f64, r: f64) -> f64 {
    norm_pdf(l) - norm_pdf(r)
}

/// P(Z1 <= h, Z2 <= k) for standard bivariate normal with correlation rho.
///
/// Reduces to a single smooth integral over the first coordinate; panels are
/// refined around the conditional transition at x = k/rho where the inner CDF
/// switches, which keeps the rule accurate for |rho| near 1.
pub fn bvn_cdf(h: f64, k: f64, rho: f64) -> f64 {
    let rho = rho.clamp(-1.0, 1.0);
    if h <= -9.0 || k <= -9.0 {
        return 0.0;
    }
    if rho == 1.0 {
        return norm_cdf(h.min(k));
    }
    if rho == -1.0 {
        return (norm_cdf(h) + norm_cdf(k) - 1.0).max(0.0);
    }
    let s = (1.0 - rho * rho).sqrt();
    let lo = -9.0f64;
    let hi = h.min(9.0);
    if hi <= lo {
        return 0.0;
    }
    // panel boundaries: uniform background plus refinement near x0 = k/rho
    let mut cuts = vec![lo, hi];
    let n_uniform = 8;
    for i in 1..n_uniform {
        cuts.push(lo + (hi - lo) * i as f64 / n_uniform as f64);
    }
    if rho.abs() > 1e-12 {
        let x0 = k / rho;
        for m in [-6.0, -3.0, -1.5, 0.0, 1.5, 3.0, 6.0] {
            let c = x0 + m * s;
            if c > lo && c < hi {
                cuts.push(c);
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let (gx, gw) = gauss_legendre(20);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, wt) in gx.iter().zip(gw.iter()) {
            let z = c + r * x;
            acc += wt * norm_pdf(z) * norm_cdf((k - rho * z) / s);
        }
        total += acc * r;
    }
    total.clamp(0.0, 1.0)
}

/// A closed planar sector {z : n1.z <= c1 and n2.z <= c2} with unit normals.
#[derive(Clone, Copy, Debug)]
pub struct SectorConstraint {
    pub n1: Vec2,
    pub c1: f64,
    pub n2: Vec2,
    pub c2: f64,
}

/// Probability mass of the standard 2D normal over the sector.
pub fn sector_probability(s: &SectorConstraint) -> f64 {
    bvn_cdf(s.c1, s.c2, s.n1.dot(s.n2))
}

/// Unnormalized first moment of the standard 2D normal over the sector:
/// the vector integral of z phi2(z) dz. By the divergence theorem this is a
/// sum of Gaussian line integrals along the two boundary rays.
pub fn sector_moment(s: &SectorConstraint) -> Vec2 {
    // apex: intersection of n1.z = c1 with n2.z = c2
    let det = s.n1.cross(s.n2);
    if det.abs() < 1e-14 {
        if s.n1.dot(s.n2) > 0.0 {
            // coincident normals: the tighter half-plane wins
            return half_plane_moment(s.n1, s.c1.min(s.c2));
        }
        // opposite normals: slab -c2 <= n1.z <= c1
        return s.n1 * norm_interval_moment(-s.c2, s.c1);
    }
    let apex = v2(
        (s.c1 * s.n2.y - s.c2 * s.n1.y) / det,
        (s.n1.x * s.c2 - s.n2.x * s.c1) / det,
    );
    // boundary ray on line n1.z = c1: tangent perpendicular to n1, oriented
    // into the half-plane n2.z <= c2
    let mut m = v2(0.0, 0.0);
    for (n_edge, n_other) in [(s.n1, s.n2), (s.n2, s.n1)] {
        let mut tau = n_edge.rot90();
        if tau.dot(n_other) > 0.0 {
            tau = -tau;
        }
        m = m + ray_flux(apex, tau, n_edge);
    }
    m
}

/// Contribution -n_out * integral of phi2 along the ray {apex + s tau : s >= 0}.
fn ray_flux(apex: Vec2, tau: Vec2, n_out: Vec2) -> Vec2 {
    let a = apex.dot(tau);
    let q2 = (apex.norm2() - a * a).max(0.0);
    let line_mass = norm_pdf(q2.sqrt()) * (1.0 - norm_cdf(a));
    -n_out * line_mass
}

/// Unnormalized first moment over the half-plane {n.z <= c} (|n| = 1).
pub fn half_plane_moment(n: Vec2, c: f64) -> Vec2 {
    if c.is_infinite() {
        return v2(0.0, 0.0);
    }
    // full-line Gaussian integral at distance |c| from the origin
    -n * norm_pdf(c)
}
