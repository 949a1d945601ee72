//! Associated metrics by polarization of `dα1 + dα2` against an auxiliary metric.
//!
//! Works pointwise in floating point. Given the `TG1 ⊕ TG2` frame `V` at a
//! point, `K = VᵀkV = LLᵀ` and `Ω = Vᵀ(dα1+dα2)V`, the skew matrix
//! `B = L⁻¹ΩL⁻ᵀ` factors as `B = φ_B P` with `P = (BᵀB)^{1/2}`.
//! Then `φ̃ = L⁻ᵀφ_B Lᵀ` and `G̃ = L P Lᵀ` on the subbundle, extended by
//! `φ Z_i = 0` and `g(Z_i, ·) = α_i`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::algebra::{poly::rational_to_f64, RatFun, Rational, RfMatrix};
use crate::error::{Error, Result};
use crate::exterior::{EndoField, MetricField, SpaceKind, VectorField};
use crate::pair::VerifiedPair;
use crate::structure::{is_decomposable, ContactPairStructure};
use crate::verdict::Verdict;

use super::is_associated;

const EIG_TOL: f64 = 1e-12;

/// `φ` and `g` evaluated at one point, in the space's basis.
#[derive(Clone, Debug)]
pub struct PolarizedPoint {
    pub phi: DMatrix<f64>,
    pub g: DMatrix<f64>,
}

/// Max-norm residuals at one point.
#[derive(Clone, Debug, Default)]
pub struct PolarizationResiduals {
    /// `|GΦ - A|`.
    pub associated: f64,
    /// `|G Z_i - a_i|`.
    pub reeb: f64,
    /// `|ΦᵀGΦ - G + Σ a_i a_iᵀ|`.
    pub compatible: f64,
    /// `|Φ² + I - Σ Z_i a_iᵀ|`.
    pub structure: f64,
    /// Distance of `φ(TG_i)` from `TG_i`.
    pub decomposable: f64,
    /// `|g(TF1, TF2)|`.
    pub orthogonality: f64,
    /// Smallest eigenvalue of `G`.
    pub min_eigenvalue: f64,
}

impl PolarizationResiduals {
    pub fn max_identity_residual(&self) -> f64 {
        self.associated.max(self.reeb).max(self.compatible).max(self.structure)
    }
}

#[derive(Clone, Debug)]
pub struct Polarization {
    vp: VerifiedPair,
    k: DMatrix<f64>,
    omega: DMatrix<f64>,
    decomposable: bool,
    constant: bool,
}

fn to_f64_matrix(m: &RfMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].to_f64().expect("constant entry"))
}

fn frame_at(vs: &[VectorField], p: &[f64], n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, vs.len());
    for (c, v) in vs.iter().enumerate() {
        m.set_column(c, &DVector::from_vec(v.eval_f64(p)));
    }
    m
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Symmetric square root of a symmetric positive definite matrix.
fn sym_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut d = eig.eigenvalues.clone();
    for x in d.iter_mut() {
        if *x <= EIG_TOL {
            return Err(Error::Numeric(format!("dα1 + dα2 is singular on the subbundle (eigenvalue {x:e})")));
        }
        *x = x.sqrt();
    }
    let q = &eig.eigenvectors;
    Ok(q * DMatrix::from_diagonal(&d) * q.transpose())
}

/// Polarize `Ω` against `K` on one block; returns `(φ̃, G̃)` in frame coordinates.
fn polarize_block(k: &DMatrix<f64>, omega: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let chol = k.clone().cholesky().ok_or_else(|| Error::Numeric("auxiliary metric is not positive definite on the subbundle".into()))?;
    let l = chol.l();
    let l_inv = l.clone().try_inverse().ok_or_else(|| Error::Numeric("singular Cholesky factor".into()))?;
    let b = &l_inv * omega * l_inv.transpose();
    let p = sym_sqrt(&(b.transpose() * &b))?;
    let p_inv = p.clone().try_inverse().ok_or_else(|| Error::Numeric("singular polar factor".into()))?;
    let phi_b = &b * p_inv;
    let phi = l_inv.transpose() * phi_b * l.transpose();
    let g = &l * p * l.transpose();
    Ok((phi, g))
}

/// Requires `dα1`, `dα2` and `k_aux` to have constant coefficients.
pub fn build_associated_by_polarization(vp: &VerifiedPair, k_aux: &MetricField, decomposable: bool) -> Result<Polarization> {
    for (name, m) in [("dα1", vp.d_alpha(1).as_matrix()?), ("dα2", vp.d_alpha(2).as_matrix()?), ("the auxiliary metric", k_aux.matrix().clone())] {
        if !m.is_constant() {
            return Err(Error::Precondition(format!("{name} does not have constant coefficients")));
        }
    }
    let omega = to_f64_matrix(&super::associated_target(vp));
    let k = to_f64_matrix(k_aux.matrix());
    let constant = vp.tg(1).vectors().iter().chain(vp.tg(2).vectors()).chain([vp.z(1), vp.z(2)]).all(|v| v.components().iter().all(RatFun::is_constant))
        && vp.alpha_vec(1).iter().chain(vp.alpha_vec(2).iter()).all(RatFun::is_constant);
    let pol = Polarization { vp: vp.clone(), k, omega, decomposable, constant };
    for p in pol.sample_points_f64() {
        pol.at(&p)?;
    }
    Ok(pol)
}

impl Polarization {
    pub fn vp(&self) -> &VerifiedPair {
        &self.vp
    }

    pub fn is_decomposable_mode(&self) -> bool {
        self.decomposable
    }

    /// All inputs are constant, so the output is the same at every point.
    pub fn is_constant(&self) -> bool {
        self.constant
    }

    pub fn sample_points_f64(&self) -> Vec<Vec<f64>> {
        self.vp.pair().sample_points().iter().map(|p| p.iter().map(rational_to_f64).collect()).collect()
    }

    pub fn at(&self, p: &[f64]) -> Result<PolarizedPoint> {
        let n = self.vp.dim();
        let blocks: Vec<Vec<VectorField>> = if self.decomposable {
            vec![self.vp.tg(1).vectors().to_vec(), self.vp.tg(2).vectors().to_vec()]
        } else {
            vec![self.vp.tg_sum().vectors().to_vec()]
        };
        let m = n - 2;
        let mut phi_t = DMatrix::zeros(n, n);
        let mut g_t = DMatrix::zeros(n, n);
        let mut full = DMatrix::zeros(n, n);
        let mut off = 0;
        for vs in &blocks {
            if vs.is_empty() {
                continue;
            }
            let v = frame_at(vs, p, n);
            let ks = v.transpose() * &self.k * &v;
            let om = v.transpose() * &self.omega * &v;
            let (phi_b, g_b) = polarize_block(&ks, &om)?;
            let s = vs.len();
            phi_t.view_mut((off, off), (s, s)).copy_from(&phi_b);
            g_t.view_mut((off, off), (s, s)).copy_from(&g_b);
            full.view_mut((0, off), (n, s)).copy_from(&v);
            off += s;
        }
        debug_assert_eq!(off, m);
        for (c, i) in [(m, 1), (m + 1, 2)] {
            full.set_column(c, &DVector::from_vec(self.vp.z(i).eval_f64(p)));
            g_t[(c, c)] = 1.0;
        }
        let inv = full.clone().try_inverse().ok_or_else(|| Error::Numeric("frame and Reeb fields are dependent at the point".into()))?;
        let phi = &full * phi_t * &inv;
        let g = inv.transpose() * g_t * &inv;
        let g = (&g + g.transpose()) * 0.5;
        Ok(PolarizedPoint { phi, g })
    }

    fn alpha_at(&self, i: usize, p: &[f64]) -> DVector<f64> {
        DVector::from_vec(self.vp.alpha_vec(i).iter().map(|c| c.eval_f64(p)).collect())
    }

    pub fn residuals(&self, p: &[f64]) -> Result<PolarizationResiduals> {
        let n = self.vp.dim();
        let pt = self.at(p)?;
        let a = DMatrix::from_fn(n, n, |r, c| self.omega[(r, c)]);
        let associated = max_abs(&(&pt.g * &pt.phi - a));
        let mut reeb = 0.0f64;
        let mut aa = DMatrix::zeros(n, n);
        let mut za = DMatrix::zeros(n, n);
        for i in 1..=2 {
            let z = DVector::from_vec(self.vp.z(i).eval_f64(p));
            let al = self.alpha_at(i, p);
            reeb = reeb.max((&pt.g * &z - &al).amax());
            aa += &al * al.transpose();
            za += &z * al.transpose();
        }
        let compatible = max_abs(&(pt.phi.transpose() * &pt.g * &pt.phi - &pt.g + &aa));
        let structure = max_abs(&(&pt.phi * &pt.phi + DMatrix::identity(n, n) - za));
        let mut decomposable = 0.0f64;
        for i in 1..=2 {
            let vs = self.vp.tg(i).vectors();
            if vs.is_empty() {
                continue;
            }
            let v = frame_at(vs, p, n);
            let img = &pt.phi * &v;
            let gram = v.transpose() * &v;
            let coef = gram.try_inverse().ok_or_else(|| Error::Numeric("dependent TG frame".into()))? * v.transpose() * &img;
            decomposable = decomposable.max(max_abs(&(img - &v * coef)));
        }
        let f1 = frame_at(self.vp.tf(1).vectors(), p, n);
        let f2 = frame_at(self.vp.tf(2).vectors(), p, n);
        let orthogonality = max_abs(&(f1.transpose() * &pt.g * f2));
        let min_eigenvalue = SymmetricEigen::new(pt.g.clone()).eigenvalues.min();
        Ok(PolarizationResiduals { associated, reeb, compatible, structure, decomposable, orthogonality, min_eigenvalue })
    }

    /// Worst residuals across the sample points.
    pub fn worst_residuals(&self) -> Result<PolarizationResiduals> {
        let mut w = PolarizationResiduals { min_eigenvalue: f64::INFINITY, ..Default::default() };
        for p in self.sample_points_f64() {
            let r = self.residuals(&p)?;
            w.associated = w.associated.max(r.associated);
            w.reeb = w.reeb.max(r.reeb);
            w.compatible = w.compatible.max(r.compatible);
            w.structure = w.structure.max(r.structure);
            w.decomposable = w.decomposable.max(r.decomposable);
            w.orthogonality = w.orthogonality.max(r.orthogonality);
            w.min_eigenvalue = w.min_eigenvalue.min(r.min_eigenvalue);
        }
        Ok(w)
    }

    /// Associated identities, positivity and (with the flag) decomposability within `tol`.
    pub fn check(&self, tol: f64) -> Result<Verdict> {
        let pts = self.sample_points_f64();
        for (idx, p) in pts.iter().enumerate() {
            let r = self.residuals(p)?;
            let point = crate::pair::show_point(&self.vp.pair().sample_points()[idx]);
            let fail = if r.max_identity_residual() >= tol {
                Some(format!("associated residual {:.3e} at {point}", r.max_identity_residual()))
            } else if r.min_eigenvalue <= 0.0 {
                Some(format!("g not positive definite at {point} (eigenvalue {:.3e})", r.min_eigenvalue))
            } else if self.decomposable && r.decomposable >= tol {
                Some(format!("φ leaves TG_i by {:.3e} at {point}", r.decomposable))
            } else {
                None
            };
            if let Some(w) = fail {
                return Ok(Verdict::failed(w, "polarized metric contact pair"));
            }
        }
        let detail = format!("polarized metric contact pair within {tol:e}");
        if self.exact().is_some() {
            return Ok(Verdict::verified(format!("{detail}; exact rational form passes the exact checks")));
        }
        Ok(Verdict::sample_verified(pts.len(), detail))
    }

    /// Exact `(φ, g)` recovered by rational reconstruction when the inputs are
    /// constant and the reconstructed pair passes the exact associated check.
    pub fn exact(&self) -> Option<(EndoField, MetricField)> {
        if !self.constant {
            return None;
        }
        let p = self.sample_points_f64().into_iter().next()?;
        let pt = self.at(&p).ok()?;
        let space = self.vp.space();
        let rat = |m: &DMatrix<f64>| -> Option<RfMatrix> {
            let mut rows = Vec::with_capacity(m.nrows());
            for r in 0..m.nrows() {
                let mut row = Vec::with_capacity(m.ncols());
                for c in 0..m.ncols() {
                    row.push(RatFun::constant(reconstruct(m[(r, c)])?));
                }
                rows.push(row);
            }
            Some(RfMatrix::from_rows(rows))
        };
        let phi = EndoField::new(space, rat(&pt.phi)?).ok()?;
        let g = MetricField::new(space, rat(&pt.g)?).ok()?;
        let cps = ContactPairStructure::new(self.vp.clone(), phi.clone()).ok()?;
        if !is_associated(&cps, &g).passed() {
            return None;
        }
        if self.decomposable && is_decomposable(&cps).is_failed() {
            return None;
        }
        Some((phi, g))
    }

    /// Max-norms of `L_{Z_i} g` and `L_{Z_i} φ` at a point. Charts use central
    /// differences of step `h`; Lie frames use the structure constants.
    pub fn killing_residuals(&self, i: usize, p: &[f64], h: f64) -> Result<(f64, f64)> {
        let n = self.vp.dim();
        let z = self.vp.z(i);
        let pt = self.at(p)?;
        // jm[a][c] = e_c(Z^a) - (ad_Z)^a_c on frames, so that [Z, e_c] = -jm e_c.
        let mut jm = DMatrix::zeros(n, n);
        let mut zdg = DMatrix::zeros(n, n);
        let mut zdphi = DMatrix::zeros(n, n);
        match self.vp.space().kind() {
            SpaceKind::Chart => {
                let zp = z.eval_f64(p);
                for a in 0..n {
                    for c in 0..n {
                        jm[(a, c)] = z.components()[a].partial(c).eval_f64(p);
                    }
                }
                for (c, zc) in zp.iter().enumerate() {
                    if *zc == 0.0 {
                        continue;
                    }
                    let mut hi = p.to_vec();
                    let mut lo = p.to_vec();
                    hi[c] += h;
                    lo[c] -= h;
                    let (ph, pl) = (self.at(&hi)?, self.at(&lo)?);
                    zdg += (ph.g - pl.g) * (*zc / (2.0 * h));
                    zdphi += (ph.phi - pl.phi) * (*zc / (2.0 * h));
                }
            }
            SpaceKind::LieFrame { constants } => {
                let zc: Vec<f64> = z.components().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
                for k in 0..n {
                    for a in 0..n {
                        let s: f64 = (0..n).map(|j| zc[j] * rational_to_f64(&constants[k][j][a])).sum();
                        jm[(k, a)] = -s;
                    }
                }
            }
        }
        let lg = zdg + jm.transpose() * &pt.g + &pt.g * &jm;
        let lphi = zdphi - &jm * &pt.phi + &pt.phi * &jm;
        Ok((max_abs(&lg), max_abs(&lphi)))
    }
}

/// Nearest rational with denominator at most 720 within `1e-10`.
fn reconstruct(x: f64) -> Option<Rational> {
    for d in 1..=720i64 {
        let n = (x * d as f64).round();
        if (n / d as f64 - x).abs() < 1e-10 && n.abs() < 1e15 {
            return Some(crate::algebra::rat(n as i64, d));
        }
    }
    None
}
