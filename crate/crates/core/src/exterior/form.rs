use std::collections::BTreeMap;

use super::field::VectorField;
use super::multi::{self, add_into, add_signed, Terms};
use super::space::{same_space, SpaceRef};
use crate::algebra::{RatFun, Rational, RfMatrix};
use crate::error::{Error, Result};

/// A differential p-form with rational-function coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    space: SpaceRef,
    degree: usize,
    terms: Terms,
}

impl Form {
    pub fn zero(space: &SpaceRef, degree: usize) -> Form {
        Form { space: space.clone(), degree, terms: Terms::new() }
    }

    pub fn function(space: &SpaceRef, f: RatFun) -> Result<Form> {
        Form::from_terms(space, 0, [(Vec::new(), f)])
    }

    /// The basis covector `dx_a` (or `ω^a`).
    pub fn basis(space: &SpaceRef, a: usize) -> Form {
        let mut terms = Terms::new();
        terms.insert(vec![a], RatFun::one());
        Form { space: space.clone(), degree: 1, terms }
    }

    pub fn one_form(space: &SpaceRef, coeffs: Vec<RatFun>) -> Result<Form> {
        if coeffs.len() != space.dim() {
            return Err(Error::Dimension(format!("{} coefficients for a {}-dimensional space", coeffs.len(), space.dim())));
        }
        Form::from_terms(space, 1, coeffs.into_iter().enumerate().map(|(i, c)| (vec![i], c)))
    }

    /// Build from (index tuple, coefficient) pairs. Index tuples may be in any
    /// order; they are sorted with the permutation sign.
    pub fn from_terms(
        space: &SpaceRef,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, RatFun)>,
    ) -> Result<Form> {
        if degree > space.dim() {
            return Err(Error::DegreeOutOfRange { degree, dim: space.dim() });
        }
        let mut t = Terms::new();
        for (idx, c) in terms {
            if idx.len() != degree || idx.iter().any(|&i| i >= space.dim()) {
                return Err(Error::Dimension(format!("index tuple {idx:?} for a degree-{degree} form")));
            }
            space.check_coefficient(&c)?;
            add_signed(&mut t, &idx, false, c);
        }
        Ok(Form { space: space.clone(), degree, terms: t })
    }

    pub(crate) fn from_raw(space: &SpaceRef, degree: usize, terms: Terms) -> Form {
        Form { space: space.clone(), degree, terms }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> RatFun {
        match multi::sort_with_sign(idx) {
            None => RatFun::zero(),
            Some((key, neg)) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(RatFun::zero);
                if neg {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Coefficient vector of a 1-form.
    pub fn components(&self) -> Vec<RatFun> {
        (0..self.space.dim()).map(|i| self.coeff(&[i])).collect()
    }

    /// Coefficient of the top form `e^1∧…∧e^n`.
    pub fn top_coefficient(&self) -> RatFun {
        let idx: Vec<usize> = (0..self.space.dim()).collect();
        self.coeff(&idx)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(RatFun::is_constant)
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        same_space(&self.space, &other.space)?;
        if self.degree != other.degree {
            return Err(Error::Dimension(format!("adding forms of degree {} and {}", self.degree, other.degree)));
        }
        let mut t = self.terms.clone();
        for (k, v) in &other.terms {
            add_into(&mut t, k.clone(), v.clone());
        }
        Ok(Form::from_raw(&self.space, self.degree, t))
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.scale(&RatFun::from_int(-1)))
    }

    pub fn scale(&self, f: &RatFun) -> Form {
        let mut t = Terms::new();
        for (k, v) in &self.terms {
            add_into(&mut t, k.clone(), v * f);
        }
        Form::from_raw(&self.space, self.degree, t)
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        same_space(&self.space, &other.space)?;
        let degree = self.degree + other.degree;
        if degree > self.space.dim() {
            return Ok(Form::zero(&self.space, degree));
        }
        Ok(Form::from_raw(&self.space, degree, multi::wedge_terms(&self.terms, &other.terms)))
    }

    /// `self ∧ … ∧ self` (`e` factors; the constant 1 for `e = 0`).
    pub fn power(&self, e: usize) -> Form {
        let mut acc = Form::function(&self.space, RatFun::one()).expect("constant");
        for _ in 0..e {
            acc = acc.wedge(self).expect("same space");
        }
        acc
    }

    /// Exterior derivative. Chart: `d(f dx_I) = Σ_a ∂_a f dx_a∧dx_I`.
    /// Lie frame: the antiderivation extending `dω^k = -Σ_{i<j} c^k_{ij} ω^i∧ω^j`.
    pub fn ext_d(&self) -> Form {
        let n = self.space.dim();
        let degree = self.degree + 1;
        if degree > n {
            return Form::zero(&self.space, degree);
        }
        let terms = if self.space.is_chart() {
            let mut out = Terms::new();
            for (idx, f) in &self.terms {
                for a in 0..n {
                    let df = f.partial(a);
                    if df.is_zero() {
                        continue;
                    }
                    let mut seq = vec![a];
                    seq.extend_from_slice(idx);
                    add_signed(&mut out, &seq, false, df);
                }
            }
            out
        } else {
            self.space.frame_d(&self.terms)
        };
        Form::from_raw(&self.space, degree, terms)
    }

    pub fn interior(&self, x: &VectorField) -> Result<Form> {
        same_space(&self.space, x.space())?;
        if self.degree == 0 {
            return Err(Error::InteriorOfFunction);
        }
        Ok(Form::from_raw(&self.space, self.degree - 1, multi::interior_terms(x.components(), &self.terms)))
    }

    /// `a(v_1, …, v_p)`.
    pub fn apply(&self, vectors: &[&VectorField]) -> Result<RatFun> {
        if vectors.len() != self.degree {
            return Err(Error::Dimension(format!("{} vectors for a {}-form", vectors.len(), self.degree)));
        }
        for v in vectors {
            same_space(&self.space, v.space())?;
        }
        let comps: Vec<&[RatFun]> = vectors.iter().map(|v| v.components()).collect();
        Ok(multi::apply_terms(&self.terms, &comps))
    }

    /// Matrix `M_ab = β(e_a, e_b)` of a 2-form.
    pub fn as_matrix(&self) -> Result<RfMatrix> {
        if self.degree != 2 {
            return Err(Error::Dimension(format!("matrix of a {}-form", self.degree)));
        }
        let n = self.space.dim();
        Ok(RfMatrix::from_fn(n, n, |a, b| self.coeff(&[a, b])))
    }

    /// Lie derivative from the tensorial formula
    /// `(L_X a)(e_I) = X(a(e_I)) - Σ_r a(…, [X, e_{i_r}], …)`.
    /// Independent of the Cartan formula, which the test suite checks against.
    pub fn lie_derivative(&self, x: &VectorField) -> Result<Form> {
        same_space(&self.space, x.space())?;
        let n = self.space.dim();
        let basis: Vec<VectorField> = (0..n).map(|a| VectorField::basis(&self.space, a)).collect();
        let brackets: Vec<VectorField> = basis.iter().map(|e| x.bracket(e)).collect::<Result<_>>()?;
        let mut out = Terms::new();
        for idx in multi::index_tuples(n, self.degree) {
            let mut val = x.derive(&self.coeff(&idx));
            for r in 0..idx.len() {
                let args: Vec<&[RatFun]> = idx
                    .iter()
                    .enumerate()
                    .map(|(s, &i)| if s == r { brackets[i].components() } else { basis[i].components() })
                    .collect();
                val = &val - &multi::apply_terms(&self.terms, &args);
            }
            add_into(&mut out, idx, val);
        }
        Ok(Form::from_raw(&self.space, self.degree, out))
    }

    /// Exact coefficients at a rational point.
    pub fn eval_at(&self, point: &[Rational]) -> Result<BTreeMap<Vec<usize>, Rational>> {
        check_point(&self.space, point)?;
        self.terms
            .iter()
            .map(|(k, v)| {
                v.eval(point).map(|x| (k.clone(), x)).ok_or_else(|| Error::PoleAtPoint(format!("coefficient {k:?} = {}", self.space.show(v))))
            })
            .collect()
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx.iter().map(|&i| self.space.covector_name(i)).collect();
                if idx.is_empty() {
                    self.space.show(c)
                } else {
                    format!("({})*{}", self.space.show(c), basis.join("∧"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn check_point(space: &SpaceRef, point: &[Rational]) -> Result<()> {
    if space.is_chart() && point.len() != space.dim() {
        return Err(Error::Dimension(format!("point of length {} on a {}-chart", point.len(), space.dim())));
    }
    Ok(())
}

pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    a.wedge(b)
}

pub fn ext_d(a: &Form) -> Form {
    a.ext_d()
}

pub fn interior(x: &VectorField, a: &Form) -> Result<Form> {
    a.interior(x)
}
