use super::form::check_point;
use super::space::{same_space, SpaceRef};
use crate::algebra::{RatFun, Rational};
use crate::error::{Error, Result};

/// A tangent vector field, components in the space's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    space: SpaceRef,
    comps: Vec<RatFun>,
}

impl VectorField {
    pub fn new(space: &SpaceRef, comps: Vec<RatFun>) -> Result<VectorField> {
        if comps.len() != space.dim() {
            return Err(Error::Dimension(format!("{} components for a {}-dimensional space", comps.len(), space.dim())));
        }
        for c in &comps {
            space.check_coefficient(c)?;
        }
        Ok(VectorField { space: space.clone(), comps })
    }

    pub(crate) fn from_raw(space: &SpaceRef, comps: Vec<RatFun>) -> VectorField {
        debug_assert_eq!(comps.len(), space.dim());
        VectorField { space: space.clone(), comps }
    }

    pub fn zero(space: &SpaceRef) -> VectorField {
        VectorField { space: space.clone(), comps: vec![RatFun::zero(); space.dim()] }
    }

    pub fn basis(space: &SpaceRef, a: usize) -> VectorField {
        let mut v = VectorField::zero(space);
        v.comps[a] = RatFun::one();
        v
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn components(&self) -> &[RatFun] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<RatFun> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFun::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        same_space(&self.space, &other.space)?;
        Ok(VectorField::from_raw(&self.space, self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        same_space(&self.space, &other.space)?;
        Ok(VectorField::from_raw(&self.space, self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, f: &RatFun) -> VectorField {
        VectorField::from_raw(&self.space, self.comps.iter().map(|c| c * f).collect())
    }

    /// `X(f) = Σ_a X^a e_a(f)`.
    pub fn derive(&self, f: &RatFun) -> RatFun {
        let mut acc = RatFun::zero();
        for (a, xa) in self.comps.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let d = self.space.derive(f, a);
            if !d.is_zero() {
                acc = &acc + &(xa * &d);
            }
        }
        acc
    }

    /// Lie bracket. Chart part `Σ X^a ∂_a Y^c - Y^a ∂_a X^c`; frame part
    /// `Σ X^i Y^j c^k_{ij}`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        same_space(&self.space, &other.space)?;
        let n = self.space.dim();
        let mut out: Vec<RatFun> = (0..n).map(|c| &self.derive(&other.comps[c]) - &other.derive(&self.comps[c])).collect();
        if self.space.is_lie() {
            for i in 0..n {
                if self.comps[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other.comps[j].is_zero() {
                        continue;
                    }
                    let xy = &self.comps[i] * &other.comps[j];
                    for (k, slot) in out.iter_mut().enumerate() {
                        let c = self.space.structure_constant(k, i, j);
                        if !num_traits::Zero::is_zero(&c) {
                            *slot = &*slot + &xy.scale(&c);
                        }
                    }
                }
            }
        }
        Ok(VectorField::from_raw(&self.space, out))
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        check_point(&self.space, point)?;
        self.comps
            .iter()
            .enumerate()
            .map(|(a, c)| c.eval(point).ok_or_else(|| Error::PoleAtPoint(format!("component {} = {}", self.space.basis_vector_name(a), self.space.show(c)))))
            .collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.comps.iter().map(|c| c.eval_f64(point)).collect()
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                let name = self.space.basis_vector_name(a);
                if c.is_one() {
                    name
                } else if (-c).is_one() {
                    format!("-{name}")
                } else {
                    format!("({})*{}", self.space.show(c), name)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.bracket(y)
}
