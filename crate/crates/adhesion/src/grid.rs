//! Uniform rectangular sampling lattices in one or two dimensions and
//! grid-sampled scalar fields.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub dim: usize,
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub n: [usize; 2],
}

impl Grid {
    pub fn new_1d(lo: f64, hi: f64, n: usize) -> Result<Grid> {
        let g = Grid {
            dim: 1,
            lo: [lo, 0.0],
            hi: [hi, 0.0],
            n: [n, 1],
        };
        g.validate()?;
        Ok(g)
    }

    pub fn new_2d(lo: [f64; 2], hi: [f64; 2], n: [usize; 2]) -> Result<Grid> {
        let g = Grid {
            dim: 2,
            lo,
            hi,
            n,
        };
        g.validate()?;
        Ok(g)
    }

    /// Square 2D grid over [lo, hi]^2 with n nodes per axis.
    pub fn square(lo: f64, hi: f64, n: usize) -> Result<Grid> {
        Grid::new_2d([lo, lo], [hi, hi], [n, n])
    }

    fn validate(&self) -> Result<()> {
        for a in 0..self.dim {
            if self.n[a] < 2 {
                return Err(Error::InvalidInput(format!(
                    "grid needs at least 2 nodes per axis, got {} on axis {a}",
                    self.n[a]
                )));
            }
            if !(self.hi[a] > self.lo[a]) {
                return Err(Error::InvalidInput(format!(
                    "grid bounds must satisfy lo < hi on axis {a}: [{}, {}]",
                    self.lo[a], self.hi[a]
                )));
            }
        }
        Ok(())
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / (self.n[axis] - 1) as f64
    }

    pub fn max_spacing(&self) -> f64 {
        (0..self.dim).map(|a| self.spacing(a)).fold(0.0, f64::max)
    }

    /// Node coordinate, bit-exactly reproducible from the index.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        self.lo[axis] + i as f64 * self.spacing(axis)
    }

    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        (0..self.n[axis]).map(|i| self.coord(axis, i)).collect()
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major flat index (axis 0 slow, axis 1 fast).
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n[1] + j
    }

    pub fn node(&self, idx: usize) -> Vec<f64> {
        let (i, j) = (idx / self.n[1], idx % self.n[1]);
        if self.dim == 1 {
            vec![self.coord(0, i)]
        } else {
            vec![self.coord(0, i), self.coord(1, j)]
        }
    }

    /// Index of the nearest node; error if p is outside the bounds.
    pub fn locate(&self, p: &[f64]) -> Result<[usize; 2]> {
        let mut out = [0usize; 2];
        for a in 0..self.dim {
            let h = self.spacing(a);
            let s = (p[a] - self.lo[a]) / h;
            if s < -1e-9 || s > (self.n[a] - 1) as f64 + 1e-9 {
                return Err(Error::OutsideGrid(p.to_vec()));
            }
            out[a] = (s.round() as isize).clamp(0, self.n[a] as isize - 1) as usize;
        }
        Ok(out)
    }

    /// Cell count per axis (nodes minus one).
    pub fn cells(&self, axis: usize) -> usize {
        self.n[axis] - 1
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim).map(|a| self.spacing(a)).product()
    }
}

/// Rule for off-grid queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extension {
    AffineExtrapolate,
    Clamp,
    Undefined,
}

#[derive(Clone, Debug)]
pub struct ScalarField {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub extension: Extension,
}

impl ScalarField {
    pub fn new(grid: Grid, values: Vec<f64>, extension: Extension) -> Result<ScalarField> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite node value {v}")));
        }
        Ok(ScalarField {
            grid,
            values,
            extension,
        })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> f64) -> ScalarField {
        let values = (0..grid.len()).map(|k| f(&grid.node(k))).collect();
        ScalarField {
            grid,
            values,
            extension: Extension::AffineExtrapolate,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    /// Multilinear interpolation with the declared off-grid extension.
    pub fn eval(&self, p: &[f64]) -> f64 {
        let g = &self.grid;
        let mut base = [0usize; 2];
        let mut frac = [0.0f64; 2];
        for a in 0..g.dim {
            let h = g.spacing(a);
            let mut s = (p[a] - g.lo[a]) / h;
            let max = (g.n[a] - 1) as f64;
            if s < 0.0 || s > max {
                match self.extension {
                    Extension::Clamp => s = s.clamp(0.0, max),
                    Extension::AffineExtrapolate => {}
                    Extension::Undefined => return f64::NAN,
                }
            }
            let i = (s.floor() as isize).clamp(0, g.n[a] as isize - 2) as usize;
            base[a] = i;
            frac[a] = s - i as f64;
        }
        if g.dim == 1 {
            let (i, u) = (base[0], frac[0]);
            self.values[i] * (1.0 - u) + self.values[i + 1] * u
        } else {
            let (i, j) = (base[0], base[1]);
            let (u, v) = (frac[0], frac[1]);
            let f00 = self.at(i, j);
            let f01 = self.at(i, j + 1);
            let f10 = self.at(i + 1, j);
            let f11 = self.at(i + 1, j + 1);
            f00 * (1.0 - u) * (1.0 - v) + f01 * (1.0 - u) * v + f10 * u * (1.0 - v) + f11 * u * v
        }
    }

    /// Central-difference gradient at an interior node.
    pub fn gradient_at_node(&self, i: usize, j: usize) -> Vec<f64> {
        let g = &self.grid;
        let mut out = Vec::with_capacity(g.dim);
        let d0 = if i == 0 {
            (self.at(1, j) - self.at(0, j)) / g.spacing(0)
        } else if i == g.n[0] - 1 {
            (self.at(i, j) - self.at(i - 1, j)) / g.spacing(0)
        } else {
            (self.at(i + 1, j) - self.at(i - 1, j)) / (2.0 * g.spacing(0))
        };
        out.push(d0);
        if g.dim == 2 {
            let d1 = if j == 0 {
                (self.at(i, 1) - self.at(i, 0)) / g.spacing(1)
            } else if j == g.n[1] - 1 {
                (self.at(i, j) - self.at(i, j - 1)) / g.spacing(1)
            } else {
                (self.at(i, j + 1) - self.at(i, j - 1)) / (2.0 * g.spacing(1))
            };
            out.push(d1);
        }
        out
    }

    /// Largest one-sided difference magnitude over all axes.
    pub fn max_abs_slope(&self) -> f64 {
        let g = &self.grid;
        let mut m: f64 = 0.0;
        for i in 0..g.n[0] {
            for j in 0..g.n[1] {
                if i + 1 < g.n[0] {
                    m = m.max(((self.at(i + 1, j) - self.at(i, j)) / g.spacing(0)).abs());
                }
                if g.dim == 2 && j + 1 < g.n[1] {
                    m = m.max(((self.at(i, j + 1) - self.at(i, j)) / g.spacing(1)).abs());
                }
            }
        }
        m
    }

    /// One-sided slope range along an axis.
    pub fn slope_range(&self, axis: usize) -> (f64, f64) {
        let g = &self.grid;
        let h = g.spacing(axis);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..g.n[0] {
            for j in 0..g.n[1] {
                let s = match axis {
                    0 if i + 1 < g.n[0] => (self.at(i + 1, j) - self.at(i, j)) / h,
                    1 if g.dim == 2 && j + 1 < g.n[1] => (self.at(i, j + 1) - self.at(i, j)) / h,
                    _ => continue,
                };
                lo = lo.min(s);
                hi = hi.max(s);
            }
        }
        (lo, hi)
    }

    /// CSV dump: header `# grid lo.. hi.. n.. dim`, rows `index..., value`
    /// with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let g = &self.grid;
        let mut head = String::from("# grid");
        for a in 0..g.dim {
            head += &format!(" {}", fmt_g17(g.lo[a]));
        }
        for a in 0..g.dim {
            head += &format!(" {}", fmt_g17(g.hi[a]));
        }
        for a in 0..g.dim {
            head += &format!(" {}", g.n[a]);
        }
        head += &format!(" {}", g.dim);
        writeln!(w, "{head}")?;
        for i in 0..g.n[0] {
            for j in 0..g.n[1] {
                if g.dim == 1 {
                    writeln!(w, "{i}, {}", fmt_g17(self.at(i, j)))?;
                } else {
                    writeln!(w, "{i}, {j}, {}", fmt_g17(self.at(i, j)))?;
                }
            }
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<ScalarField> {
        let mut lines = r.lines();
        let head = lines
            .next()
            .ok_or_else(|| Error::Parse("empty field file".into()))??;
        let toks: Vec<&str> = head.trim_start_matches('#').split_whitespace().collect();
        if toks.first() != Some(&"grid") {
            return Err(Error::Parse("missing `# grid` header".into()));
        }
        let dim: usize = toks
            .last()
            .unwrap()
            .parse()
            .map_err(|e| Error::Parse(format!("bad dim: {e}")))?;
        if dim == 0 || dim > 2 || toks.len() != 2 + 3 * dim {
            return Err(Error::Parse(format!("malformed grid header: {head}")));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse().map_err(|e| Error::Parse(format!("bad number {s}: {e}")))
        };
        let mut lo = [0.0; 2];
        let mut hi = [0.0; 2];
        let mut n = [1usize; 2];
        for a in 0..dim {
            lo[a] = num(toks[1 + a])?;
            hi[a] = num(toks[1 + dim + a])?;
            n[a] = toks[1 + 2 * dim + a]
                .parse()
                .map_err(|e| Error::Parse(format!("bad count: {e}")))?;
        }
        let grid = if dim == 1 {
            Grid::new_1d(lo[0], hi[0], n[0])?
        } else {
            Grid::new_2d(lo, hi, n)?
        };
        let mut values = vec![f64::NAN; grid.len()];
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split(',').map(str::trim).collect();
            if parts.len() != dim + 1 {
                return Err(Error::Parse(format!("malformed row: {line}")));
            }
            let i: usize = parts[0]
                .parse()
                .map_err(|e| Error::Parse(format!("bad index: {e}")))?;
            let j: usize = if dim == 2 {
                parts[1]
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad index: {e}")))?
            } else {
                0
            };
            values[grid.index(i, j)] = num(parts[dim])?;
        }
        ScalarField::new(grid, values, Extension::AffineExtrapolate)
    }
}

/// Fixed 17-significant-digit float formatting for diff-able artifacts.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}
