//! Integer lattices given by a generating set, with exact membership through
//! the row Hermite normal form.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// Coefficients over the original generating vectors, when a member.
    pub certificate: Option<Vec<i64>>,
    /// The first coordinate at which elimination got stuck, when not.
    pub obstruction: Option<String>,
}

/// The `Z`-span of a list of integer vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationLattice {
    basis: Vec<Vec<i64>>,
    coordinates: Vec<String>,
    #[serde(skip)]
    hnf: Hermite,
}

/// `rows = transform · basis`, in row Hermite normal form. Zero rows dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Hermite {
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<i128>>,
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("hermite normal form"))
}

/// `a -= factor · b` on whole rows.
fn axpy(a: &mut [i128], factor: i128, b: &[i128]) -> Result<()> {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = checked(x.checked_sub(checked(factor.checked_mul(y))?))?;
    }
    Ok(())
}

impl Hermite {
    fn compute(basis: &[Vec<i64>], dim: usize) -> Result<Self> {
        let m = basis.len();
        let mut h: Vec<Vec<i128>> = basis
            .iter()
            .map(|r| r.iter().map(|&a| a as i128).collect())
            .collect();
        let mut u: Vec<Vec<i128>> = (0..m)
            .map(|i| (0..m).map(|j| (i == j) as i128).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;

        for col in 0..dim {
            if row == m {
                break;
            }
            // Euclid down the column until a single nonzero entry remains.
            loop {
                let best = (row..m)
                    .filter(|&i| h[i][col] != 0)
                    .min_by_key(|&i| h[i][col].abs());
                let Some(b) = best else { break };
                h.swap(row, b);
                u.swap(row, b);
                let mut clean = true;
                for i in row + 1..m {
                    if h[i][col] == 0 {
                        continue;
                    }
                    let q = h[i][col] / h[row][col];
                    let (pivot_h, pivot_u) = (h[row].clone(), u[row].clone());
                    axpy(&mut h[i], q, &pivot_h)?;
                    axpy(&mut u[i], q, &pivot_u)?;
                    clean &= h[i][col] == 0;
                }
                if clean {
                    break;
                }
            }
            if h[row][col] == 0 {
                continue;
            }
            if h[row][col] < 0 {
                h[row].iter_mut().for_each(|a| *a = -*a);
                u[row].iter_mut().for_each(|a| *a = -*a);
            }
            let (pivot_h, pivot_u) = (h[row].clone(), u[row].clone());
            for i in 0..row {
                let q = h[i][col].div_euclid(pivot_h[col]);
                if q != 0 {
                    axpy(&mut h[i], q, &pivot_h)?;
                    axpy(&mut u[i], q, &pivot_u)?;
                }
            }
            pivots.push(col);
            row += 1;
        }

        h.truncate(row);
        u.truncate(row);
        Ok(Hermite {
            rows: h,
            pivots,
            transform: u,
        })
    }
}

impl RelationLattice {
    /// The lattice spanned by `basis`; `coordinates` names each coordinate
    /// (used in obstruction messages) and fixes the dimension.
    pub fn new(basis: Vec<Vec<i64>>, coordinates: Vec<String>) -> Result<Self> {
        let dim = coordinates.len();
        if let Some(bad) = basis.iter().find(|v| v.len() != dim) {
            return Err(Error::invalid(format!(
                "basis vector of length {} in a lattice of dimension {dim}",
                bad.len()
            )));
        }
        let hnf = Hermite::compute(&basis, dim)?;
        Ok(RelationLattice {
            basis,
            coordinates,
            hnf,
        })
    }

    /// Unnamed coordinates `x0, x1, …`.
    pub fn from_basis(basis: Vec<Vec<i64>>, dim: usize) -> Result<Self> {
        Self::new(basis, (0..dim).map(|i| format!("x{i}")).collect())
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.coordinates.len()
    }

    pub fn rank(&self) -> usize {
        self.hnf.rows.len()
    }

    /// Nonzero rows of the Hermite normal form.
    pub fn hermite_form(&self) -> Result<Vec<Vec<i64>>> {
        self.hnf
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&a| i64::try_from(a).map_err(|_| Error::Overflow("hermite_form")))
                    .collect()
            })
            .collect()
    }

    /// Decides whether `v` lies in the lattice. Members come with integer
    /// coefficients over [`basis`](Self::basis) reproducing `v` exactly.
    pub fn contains(&self, v: &[i64]) -> Result<Membership> {
        if v.len() != self.dimension() {
            return Err(Error::invalid(format!(
                "vector of length {} queried against a lattice of dimension {}",
                v.len(),
                self.dimension()
            )));
        }
        let hnf = &self.hnf;
        let mut residual: Vec<i128> = v.iter().map(|&a| a as i128).collect();
        let mut coeffs = vec![0i128; hnf.rows.len()];
        let mut r = 0;
        for col in 0..residual.len() {
            let res = residual[col];
            if r < hnf.pivots.len() && hnf.pivots[r] == col {
                let pivot = hnf.rows[r][col];
                if res % pivot != 0 {
                    return Ok(self.obstructed(format!(
                        "coordinate {}: residual {res} is not a multiple of the pivot {pivot}",
                        self.coordinates[col]
                    )));
                }
                let t = res / pivot;
                axpy(&mut residual, t, &hnf.rows[r])?;
                coeffs[r] = t;
                r += 1;
            } else if res != 0 {
                return Ok(self.obstructed(format!(
                    "coordinate {}: residual {res} but no lattice vector has its leading entry there",
                    self.coordinates[col]
                )));
            }
        }

        let mut certificate = vec![0i128; self.basis.len()];
        for (t, urow) in coeffs.iter().zip(&hnf.transform) {
            for (c, &x) in certificate.iter_mut().zip(urow) {
                *c = checked(c.checked_add(checked(t.checked_mul(x))?))?;
            }
        }
        let certificate: Vec<i64> = certificate
            .into_iter()
            .map(|a| i64::try_from(a).map_err(|_| Error::Overflow("membership certificate")))
            .collect::<Result<_>>()?;
        debug_assert_eq!(self.combine(&certificate).ok().as_deref(), Some(v));
        Ok(Membership {
            member: true,
            certificate: Some(certificate),
            obstruction: None,
        })
    }

    /// `Σ coefficients[i] · basis[i]`.
    pub fn combine(&self, coefficients: &[i64]) -> Result<Vec<i64>> {
        if coefficients.len() != self.basis.len() {
            return Err(Error::invalid("coefficient count differs from basis size"));
        }
        let mut out = vec![0i64; self.dimension()];
        for (&t, b) in coefficients.iter().zip(&self.basis) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o = t
                    .checked_mul(x)
                    .and_then(|p| o.checked_add(p))
                    .ok_or(Error::Overflow("combine"))?;
            }
        }
        Ok(out)
    }

    fn obstructed(&self, why: String) -> Membership {
        Membership {
            member: false,
            certificate: None,
            obstruction: Some(why),
        }
    }
}
