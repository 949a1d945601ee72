use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;

use super::multi::{add_signed, Terms};
use crate::algebra::{RatFun, Rational};
use crate::error::{Error, Result};

/// The basis a tensor is expressed in.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceKind {
    /// Polynomial coordinate chart; the basis is `∂/∂x_a`, the coframe `dx_a`.
    Chart,
    /// Left-invariant frame `X_a` of a Lie algebra with dual coframe `ω^a` and
    /// `[X_i, X_j] = Σ_k c^k_{ij} X_k`. Stored as `constants[k][i][j]`.
    LieFrame { constants: Vec<Vec<Vec<Rational>>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Space {
    names: Vec<String>,
    kind: SpaceKind,
}

pub type SpaceRef = Arc<Space>;

fn check_names(names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

impl Space {
    pub fn chart<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<SpaceRef> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_names(&names)?;
        Ok(Arc::new(Space { names, kind: SpaceKind::Chart }))
    }

    /// Lie frame from structure constants `constants[k][i][j] = c^k_{ij}`.
    /// Rejects non-antisymmetric input and constants with `d∘d ≠ 0`.
    pub fn lie_frame<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        constants: Vec<Vec<Vec<Rational>>>,
    ) -> Result<SpaceRef> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_names(&names)?;
        let n = names.len();
        let shape_ok = constants.len() == n && constants.iter().all(|m| m.len() == n && m.iter().all(|r| r.len() == n));
        if !shape_ok {
            return Err(Error::Dimension(format!("structure constants must be {n}x{n}x{n}")));
        }
        for (k, ck) in constants.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if ck[i][j] != -ck[j][i].clone() {
                        return Err(Error::NotAntisymmetric { k, i, j });
                    }
                }
            }
        }
        let space = Space { names, kind: SpaceKind::LieFrame { constants } };
        for k in 0..n {
            let d = space.frame_d(&space.d_covector(k));
            if !d.is_empty() {
                return Err(Error::JacobiFailure { covector: space.names[k].clone() });
            }
        }
        Ok(Arc::new(space))
    }

    /// Lie frame from the structure equations `dω^k = Σ_{i<j} a^k_{ij} ω^i∧ω^j`,
    /// given as `(i, j, a^k_{ij})` triples per covector. Uses
    /// `c^k_{ij} = -dω^k(X_i, X_j)`.
    pub fn lie_from_differentials<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        differentials: &[Vec<(usize, usize, Rational)>],
    ) -> Result<SpaceRef> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        if differentials.len() != n {
            return Err(Error::Dimension(format!("{} structure equations for {n} covectors", differentials.len())));
        }
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        for (k, eqs) in differentials.iter().enumerate() {
            for (i, j, a) in eqs {
                let (i, j) = (*i, *j);
                if i >= n || j >= n || i == j {
                    return Err(Error::Dimension(format!("bad index pair ({i},{j}) in d{}", names[k])));
                }
                c[k][i][j] -= a.clone();
                c[k][j][i] += a.clone();
            }
        }
        Space::lie_frame(names, c)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn is_chart(&self) -> bool {
        matches!(self.kind, SpaceKind::Chart)
    }

    pub fn is_lie(&self) -> bool {
        !self.is_chart()
    }

    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> Rational {
        match &self.kind {
            SpaceKind::Chart => Rational::zero(),
            SpaceKind::LieFrame { constants } => constants[k][i][j].clone(),
        }
    }

    /// `e_a(f)`: the partial derivative on a chart, zero on a Lie frame
    /// (coefficients there are constant).
    pub fn derive(&self, f: &RatFun, a: usize) -> RatFun {
        match self.kind {
            SpaceKind::Chart => f.partial(a),
            SpaceKind::LieFrame { .. } => RatFun::zero(),
        }
    }

    pub fn check_coefficient(&self, f: &RatFun) -> Result<()> {
        if self.is_lie() && !f.is_constant() {
            return Err(Error::NonConstantOnLieFrame(f.to_string()));
        }
        if self.is_chart() && f.num_vars() > self.dim() {
            return Err(Error::Dimension(format!("coefficient uses variable index {} on a {}-chart", f.num_vars() - 1, self.dim())));
        }
        Ok(())
    }

    /// `dω^k` as a 2-form: `-Σ_{i<j} c^k_{ij} ω^i∧ω^j`.
    pub(crate) fn d_covector(&self, k: usize) -> Terms {
        let mut t = Terms::new();
        if let SpaceKind::LieFrame { constants } = &self.kind {
            let n = self.dim();
            for i in 0..n {
                for j in i + 1..n {
                    let c = &constants[k][i][j];
                    if !c.is_zero() {
                        t.insert(vec![i, j], RatFun::constant(-c.clone()));
                    }
                }
            }
        }
        t
    }

    /// Exterior derivative of constant-coefficient frame terms, as an antiderivation.
    pub(crate) fn frame_d(&self, terms: &Terms) -> Terms {
        let mut out = Terms::new();
        for (idx, coeff) in terms {
            for (r, &k) in idx.iter().enumerate() {
                for (pair, c) in self.d_covector(k) {
                    let mut seq = idx[..r].to_vec();
                    seq.extend_from_slice(&pair);
                    seq.extend_from_slice(&idx[r + 1..]);
                    add_signed(&mut out, &seq, r % 2 == 1, &c * coeff);
                }
            }
        }
        out
    }

    /// Render a coefficient with this space's names.
    pub fn show(&self, f: &RatFun) -> String {
        if self.is_chart() {
            f.display_with(&self.names).to_string()
        } else {
            f.to_string()
        }
    }

    /// Name of basis vector `a`.
    pub fn basis_vector_name(&self, a: usize) -> String {
        match self.kind {
            SpaceKind::Chart => format!("∂{}", self.names[a]),
            SpaceKind::LieFrame { .. } => format!("X[{}]", self.names[a]),
        }
    }

    /// Name of basis covector `a`.
    pub fn covector_name(&self, a: usize) -> String {
        match self.kind {
            SpaceKind::Chart => format!("d{}", self.names[a]),
            SpaceKind::LieFrame { .. } => self.names[a].clone(),
        }
    }
}

pub(crate) fn same_space(a: &SpaceRef, b: &SpaceRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}
