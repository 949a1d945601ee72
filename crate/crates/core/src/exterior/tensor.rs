use super::field::VectorField;
use super::form::{check_point, Form};
use super::space::{same_space, SpaceRef};
use crate::algebra::{RatFun, Rational, RfMatrix};
use crate::error::{Error, Result};

/// A (1,1)-tensor; column `a` of the matrix is the image of basis vector `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoField {
    space: SpaceRef,
    matrix: RfMatrix,
}

/// A symmetric (0,2)-tensor, `g_ab = g(e_a, e_b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricField {
    space: SpaceRef,
    matrix: RfMatrix,
}

fn check_matrix(space: &SpaceRef, m: &RfMatrix) -> Result<()> {
    let n = space.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!("{}x{} matrix on a {n}-dimensional space", m.rows(), m.cols())));
    }
    for e in m.entries() {
        space.check_coefficient(e)?;
    }
    Ok(())
}

impl EndoField {
    pub fn new(space: &SpaceRef, matrix: RfMatrix) -> Result<EndoField> {
        check_matrix(space, &matrix)?;
        Ok(EndoField { space: space.clone(), matrix })
    }

    pub fn zero(space: &SpaceRef) -> EndoField {
        EndoField { space: space.clone(), matrix: RfMatrix::zeros(space.dim(), space.dim()) }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn matrix(&self) -> &RfMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &VectorField) -> Result<VectorField> {
        same_space(&self.space, v.space())?;
        Ok(VectorField::from_raw(&self.space, self.matrix.mul_vec(v.components())))
    }

    pub fn compose(&self, other: &EndoField) -> Result<EndoField> {
        same_space(&self.space, &other.space)?;
        Ok(EndoField { space: self.space.clone(), matrix: &self.matrix * &other.matrix })
    }

    /// `(L_X φ)(e_b) = [X, φ e_b] - φ [X, e_b]`, column by column.
    pub fn lie_derivative(&self, x: &VectorField) -> Result<EndoField> {
        same_space(&self.space, x.space())?;
        let n = self.space.dim();
        let mut cols = Vec::with_capacity(n);
        for b in 0..n {
            let e = VectorField::basis(&self.space, b);
            let phi_e = self.apply(&e)?;
            let lhs = x.bracket(&phi_e)?;
            let rhs = self.apply(&x.bracket(&e)?)?;
            cols.push(lhs.sub(&rhs)?.into_components());
        }
        Ok(EndoField { space: self.space.clone(), matrix: RfMatrix::from_columns(n, &cols) })
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        eval_matrix(&self.space, &self.matrix, point, "phi")
    }
}

impl MetricField {
    /// Requires a symmetric, generically nondegenerate matrix.
    pub fn new(space: &SpaceRef, matrix: RfMatrix) -> Result<MetricField> {
        check_matrix(space, &matrix)?;
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let r = matrix.generic_rank();
        if r < space.dim() {
            return Err(Error::DegenerateMetric(format!("generic rank {r} < {}", space.dim())));
        }
        Ok(MetricField { space: space.clone(), matrix })
    }

    pub fn euclidean(space: &SpaceRef) -> MetricField {
        MetricField { space: space.clone(), matrix: RfMatrix::identity(space.dim()) }
    }

    /// `Σ θ_r ⊗ θ_r` for 1-forms `θ_r`.
    pub fn sum_of_squares(space: &SpaceRef, coframe: &[Form]) -> Result<MetricField> {
        let n = space.dim();
        let mut m = RfMatrix::zeros(n, n);
        for f in coframe {
            if f.degree() != 1 {
                return Err(Error::NotOneForm(f.degree()));
            }
            let c = f.components();
            m = &m + &crate::algebra::outer(&c, &c);
        }
        MetricField::new(space, m)
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn matrix(&self) -> &RfMatrix {
        &self.matrix
    }

    pub fn apply(&self, u: &VectorField, v: &VectorField) -> Result<RatFun> {
        same_space(&self.space, u.space())?;
        same_space(&self.space, v.space())?;
        Ok(self.matrix.bilinear(u.components(), v.components()))
    }

    /// `(L_X g)(e_a, e_b) = X(g_ab) - g([X,e_a], e_b) - g(e_a, [X,e_b])`.
    pub fn lie_derivative(&self, x: &VectorField) -> Result<RfMatrix> {
        same_space(&self.space, x.space())?;
        let n = self.space.dim();
        let basis: Vec<VectorField> = (0..n).map(|a| VectorField::basis(&self.space, a)).collect();
        let br: Vec<VectorField> = basis.iter().map(|e| x.bracket(e)).collect::<Result<_>>()?;
        let gbr: Vec<Vec<RatFun>> = br.iter().map(|v| self.matrix.mul_vec(v.components())).collect();
        Ok(RfMatrix::from_fn(n, n, |a, b| {
            let t = &x.derive(&self.matrix[(a, b)]) - &gbr[a][b];
            &t - &gbr[b][a]
        }))
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        eval_matrix(&self.space, &self.matrix, point, "g")
    }

    /// Positive definiteness at a point, by exact leading principal minors.
    pub fn is_positive_definite_at(&self, point: &[Rational]) -> Result<bool> {
        let m = self.eval_at(point)?;
        Ok(is_positive_definite(&m))
    }
}

/// Sylvester's criterion via exact Gaussian elimination (all pivots positive).
pub fn is_positive_definite(m: &[Vec<Rational>]) -> bool {
    use num_traits::{Signed, Zero};
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &a[k][k];
            for c in k..n {
                let v = &a[r][c] - &(&f * &a[k][c]);
                a[r][c] = v;
            }
        }
    }
    true
}

fn eval_matrix(space: &SpaceRef, m: &RfMatrix, point: &[Rational], label: &str) -> Result<Vec<Vec<Rational>>> {
    check_point(space, point)?;
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    m[(r, c)].eval(point).ok_or_else(|| Error::PoleAtPoint(format!("{label}[{r}][{c}] = {}", space.show(&m[(r, c)]))))
                })
                .collect()
        })
        .collect()
}
