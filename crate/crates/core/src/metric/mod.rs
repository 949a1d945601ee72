//! Compatible and associated metrics for contact pair structures.

pub mod polarize;

pub use polarize::{build_associated_by_polarization, Polarization, PolarizationResiduals, PolarizedPoint};

use crate::algebra::{dot, outer, RatFun, RfMatrix};
use crate::error::{Error, Result};
use crate::exterior::multi::{wedge_terms, Terms};
use crate::exterior::{MetricField, SpaceRef, VectorField};
use crate::pair::{nonvanishing_verdict, DistributionFrame, VerifiedPair};
use crate::structure::{is_decomposable, preserves_frame, ContactPairStructure};
use crate::verdict::Verdict;

fn entry_mismatch(space: &SpaceRef, lhs: &RfMatrix, rhs: &RfMatrix, label: impl Fn(&str, &str) -> String) -> Option<String> {
    for c in 0..lhs.cols() {
        for r in 0..lhs.rows() {
            if lhs[(r, c)] != rhs[(r, c)] {
                let (a, b) = (space.basis_vector_name(r), space.basis_vector_name(c));
                return Some(format!("{} = {}, expected {}", label(&a, &b), space.show(&lhs[(r, c)]), space.show(&rhs[(r, c)])));
            }
        }
    }
    None
}

fn alpha_outer_sum(vp: &VerifiedPair) -> RfMatrix {
    let a1 = vp.alpha_vec(1);
    let a2 = vp.alpha_vec(2);
    &outer(&a1, &a1) + &outer(&a2, &a2)
}

/// `A_ab = (dα1 + dα2)(e_a, e_b)`.
pub fn associated_target(vp: &VerifiedPair) -> RfMatrix {
    let d = vp.d_alpha(1).add(&vp.d_alpha(2)).expect("same space");
    d.as_matrix().expect("2-form")
}

/// `g(φX, φY) = g(X, Y) - α1(X)α1(Y) - α2(X)α2(Y)`.
pub fn is_compatible(cps: &ContactPairStructure, g: &MetricField) -> Verdict {
    if crate::exterior::space::same_space(cps.space(), g.space()).is_err() {
        return Verdict::failed("metric lives on a different space", "compatibility");
    }
    let phi = cps.phi().matrix();
    let gm = g.matrix();
    let lhs = &(&phi.transpose() * gm) * phi;
    let rhs = gm - &alpha_outer_sum(cps.vp());
    match entry_mismatch(cps.space(), &lhs, &rhs, |a, b| format!("g(φ{a}, φ{b})")) {
        None => Verdict::verified("ΦᵀGΦ = G - a1a1ᵀ - a2a2ᵀ identically"),
        Some(w) => Verdict::failed(w, "compatibility"),
    }
}

/// Residuals of the associated-metric identities.
#[derive(Clone, Debug)]
pub struct AssociatedCheckReport {
    /// `GΦ - A`.
    pub residual: RfMatrix,
    /// `G Z_i - a_i` for `i = 1, 2`.
    pub reeb_residuals: [Vec<RatFun>; 2],
    /// `g(φX, Y) = -g(X, φY)`.
    pub skew: Verdict,
    pub verdict: Verdict,
}

impl AssociatedCheckReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_verified()
    }
}

pub fn is_associated(cps: &ContactPairStructure, g: &MetricField) -> AssociatedCheckReport {
    let vp = cps.vp();
    let space = cps.space();
    let gm = g.matrix();
    let gphi = gm * cps.phi().matrix();
    let target = associated_target(vp);
    let residual = &gphi - &target;
    let reeb_residuals = [1, 2].map(|i| {
        let gz = gm.mul_vec(vp.z(i).components());
        gz.iter().zip(vp.alpha_vec(i)).map(|(a, b)| a - &b).collect::<Vec<_>>()
    });
    let skew = Verdict::check(gphi.transpose() == -&gphi, "g(φX, Y) = -g(X, φY)", || {
        let s = &gphi.transpose() + &gphi;
        let (r, c, v) = s.first_nonzero().expect("nonzero");
        format!("g(φ{}, {}) + g({}, φ{}) = {}", space.basis_vector_name(c), space.basis_vector_name(r), space.basis_vector_name(c), space.basis_vector_name(r), space.show(v))
    });
    let mut witness = entry_mismatch(space, &gphi, &target, |a, b| format!("g({a}, φ{b})"));
    if witness.is_none() {
        'reeb: for (i, r) in reeb_residuals.iter().enumerate() {
            for (a, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    witness = Some(format!("g({}, Z{}) - α{}({}) = {}", space.basis_vector_name(a), i + 1, i + 1, space.basis_vector_name(a), space.show(v)));
                    break 'reeb;
                }
            }
        }
    }
    let verdict = match witness {
        None => Verdict::verified("GΦ = dα1 + dα2 and G Z_i = α_i identically"),
        Some(w) => Verdict::failed(w, "associated metric"),
    };
    AssociatedCheckReport { residual, reeb_residuals, skew, verdict }
}

/// Consequences of compatibility: `g(Z_i, ·) = α_i` and `g(Z_i, Z_j) = δ_ij`.
pub fn compatible_corollaries(cps: &ContactPairStructure, g: &MetricField) -> Verdict {
    let vp = cps.vp();
    let space = cps.space();
    for i in 1..=2 {
        let gz = g.matrix().mul_vec(vp.z(i).components());
        let a = vp.alpha_vec(i);
        if let Some(b) = (0..vp.dim()).find(|&b| gz[b] != a[b]) {
            return Verdict::failed(format!("g(Z{i}, {}) = {}, α{i} gives {}", space.basis_vector_name(b), space.show(&gz[b]), space.show(&a[b])), "g(Z_i, ·) = α_i");
        }
        for j in 1..=2 {
            let v = g.apply(vp.z(i), vp.z(j)).expect("same space");
            let expected = if i == j { RatFun::one() } else { RatFun::zero() };
            if v != expected {
                return Verdict::failed(format!("g(Z{i}, Z{j}) = {}", space.show(&v)), "g(Z_i, Z_j) = δ_ij");
            }
        }
    }
    Verdict::verified("g(Z_i, ·) = α_i and g(Z_i, Z_j) = δ_ij")
}

/// A contact pair structure with an associated metric.
#[derive(Clone, Debug)]
pub struct MetricContactPair {
    cps: ContactPairStructure,
    g: MetricField,
}

impl MetricContactPair {
    pub fn new(cps: ContactPairStructure, g: MetricField) -> Result<MetricContactPair> {
        let rep = is_associated(&cps, &g);
        if let Some(w) = rep.verdict.witness() {
            return Err(Error::NotAssociated(w.to_string()));
        }
        Ok(MetricContactPair { cps, g })
    }

    pub fn cps(&self) -> &ContactPairStructure {
        &self.cps
    }

    pub fn g(&self) -> &MetricField {
        &self.g
    }

    pub fn vp(&self) -> &VerifiedPair {
        self.cps.vp()
    }
}

/// Compatible metric from an auxiliary metric `h`:
/// `k = h(φ²·, φ²·) + Σ α_i⊗α_i`, `g = ½(k + k(φ·, φ·) + Σ α_i⊗α_i)`.
pub fn build_compatible(cps: &ContactPairStructure, h_aux: &MetricField) -> Result<MetricField> {
    let vp = cps.vp();
    for p in vp.pair().sample_points() {
        if !h_aux.is_positive_definite_at(p)? {
            return Err(Error::DegenerateMetric(format!("auxiliary metric is not positive definite at {}", crate::pair::show_point(p))));
        }
    }
    let phi = cps.phi().matrix();
    let phi2 = phi * phi;
    let aa = alpha_outer_sum(vp);
    let k = &(&(&phi2.transpose() * h_aux.matrix()) * &phi2) + &aa;
    let kphi = &(&phi.transpose() * &k) * phi;
    let sum = &(&k + &kphi) + &aa;
    let half = crate::algebra::rat(1, 2);
    let g = MetricField::new(cps.space(), sum.map(|e| e.scale(&half)))?;
    if let Some(w) = is_compatible(cps, &g).witness() {
        return Err(Error::Precondition(format!("constructed metric is not compatible: {w}")));
    }
    for p in vp.pair().sample_points() {
        if !g.is_positive_definite_at(p)? {
            return Err(Error::DegenerateMetric(format!("constructed metric is not positive definite at {}", crate::pair::show_point(p))));
        }
    }
    Ok(g)
}

/// `g(u, v) = 0` for all `u ∈ TF1`, `v ∈ TF2` frame vectors.
pub fn are_foliations_orthogonal(vp: &VerifiedPair, g: &MetricField) -> Verdict {
    for u in vp.tf(1).vectors() {
        for v in vp.tf(2).vectors() {
            let x = g.apply(u, v).expect("same space");
            if !x.is_zero() {
                return Verdict::failed(format!("g({}, {}) = {}", u.display(), v.display(), vp.space().show(&x)), "TF1 ⊥ TF2");
            }
        }
    }
    Verdict::verified("TF1 ⊥ TF2")
}

#[derive(Clone, Debug)]
pub struct KillingReport {
    pub lie_g_zero: Verdict,
    pub lie_phi_zero: Verdict,
}

impl KillingReport {
    /// Both verdicts have the same pass/fail outcome.
    pub fn agree(&self) -> bool {
        self.lie_g_zero.is_failed() == self.lie_phi_zero.is_failed()
    }
}

/// `L_{Z_i} g` and `L_{Z_i} φ`, computed exactly.
pub fn killing_check(cps: &ContactPairStructure, g: &MetricField, i: usize) -> Result<KillingReport> {
    let rep = is_associated(cps, g);
    if let Some(w) = rep.verdict.witness() {
        return Err(Error::NotAssociated(w.to_string()));
    }
    let z = cps.vp().z(i);
    let space = cps.space();
    let lg = g.lie_derivative(z)?;
    let lie_g_zero = match lg.first_nonzero() {
        None => Verdict::verified(format!("L_Z{i} g = 0")),
        Some((a, b, v)) => Verdict::failed(
            format!("(L_Z{i} g)({}, {}) = {}", space.basis_vector_name(a), space.basis_vector_name(b), space.show(v)),
            format!("Z{i} is not Killing"),
        ),
    };
    let lphi = cps.phi().lie_derivative(z)?;
    let lie_phi_zero = match lphi.matrix().first_nonzero() {
        None => Verdict::verified(format!("L_Z{i} φ = 0")),
        Some((a, b, v)) => Verdict::failed(
            format!("{}-component of (L_Z{i} φ)({}) = {}", space.names()[a], space.basis_vector_name(b), space.show(v)),
            format!("L_Z{i} φ ≠ 0"),
        ),
    };
    Ok(KillingReport { lie_g_zero, lie_phi_zero })
}

/// What a leafwise restriction is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictionMode {
    /// Contact metric structure `(φ, Z_i, α_i, g)` on the leaves of `TF_j`, `j ≠ i`.
    LeafContactMetric(usize),
    /// Metric contact pair on the leaves of `ker dα_i`.
    LeafMCP(usize),
}

fn frame_2form_terms(beta: &crate::exterior::Form, frame: &DistributionFrame) -> Terms {
    let vs = frame.vectors();
    let mut t = Terms::new();
    for r in 0..vs.len() {
        for s in r + 1..vs.len() {
            let v = beta.apply(&[&vs[r], &vs[s]]).expect("same space");
            if !v.is_zero() {
                t.insert(vec![r, s], v);
            }
        }
    }
    t
}

fn frame_1form_terms(a: &crate::exterior::Form, frame: &DistributionFrame) -> Terms {
    let mut t = Terms::new();
    for (r, v) in frame.vectors().iter().enumerate() {
        let x = a.apply(&[v]).expect("same space");
        if !x.is_zero() {
            t.insert(vec![r], x);
        }
    }
    t
}

fn terms_power(t: &Terms, e: usize) -> Terms {
    let mut out = Terms::new();
    out.insert(vec![], RatFun::one());
    for _ in 0..e {
        out = wedge_terms(&out, t);
    }
    out
}

pub fn verify_restricted_contact_metric(mcp: &MetricContactPair, frame: &DistributionFrame, mode: RestrictionMode) -> Result<Verdict> {
    let cps = mcp.cps();
    if let Some(w) = is_decomposable(cps).witness() {
        return Err(Error::Precondition(format!("structure is not decomposable: {w}")));
    }
    if let Some(w) = preserves_frame(cps.phi(), frame).witness() {
        return Err(Error::Precondition(format!("frame is not φ-invariant: {w}")));
    }
    let vp = cps.vp();
    let space = vp.space();
    let g = mcp.g();
    let phi = cps.phi();
    let vs = frame.vectors();
    let mut parts: Vec<Verdict> = Vec::new();
    match mode {
        RestrictionMode::LeafContactMetric(i) => {
            let d = vp.d_alpha(i);
            let a = vp.alpha(i);
            let z = vp.z(i);
            let mut fail = None;
            'outer: for u in vs {
                for v in vs {
                    let lhs = g.apply(u, &phi.apply(v)?)?;
                    let rhs = d.apply(&[u, v])?;
                    if lhs != rhs {
                        fail = Some(format!("g({}, φ{}) = {}, dα{i} gives {}", u.display(), v.display(), space.show(&lhs), space.show(&rhs)));
                        break 'outer;
                    }
                }
                let gz = g.apply(u, z)?;
                let au = a.apply(&[u])?;
                if gz != au {
                    fail = Some(format!("g({}, Z{i}) = {}, α{i} gives {}", u.display(), space.show(&gz), space.show(&au)));
                    break;
                }
                let sq = phi.apply(&phi.apply(u)?)?;
                let target = z.scale(&au).sub(u)?;
                if sq != target {
                    fail = Some(format!("φ²({}) = {}, expected {}", u.display(), sq.display(), target.display()));
                    break;
                }
            }
            if fail.is_none() && !frame.contains(z) {
                fail = Some(format!("Z{i} ∉ {}", frame.label()));
            }
            parts.push(match fail {
                None => Verdict::verified(format!("contact metric structure (φ, Z{i}, α{i}, g) on {}", frame.label())),
                Some(w) => Verdict::failed(w, "leafwise contact metric structure"),
            });
        }
        RestrictionMode::LeafMCP(i) => {
            let (h, k) = if i == 1 { (0, vp.pair().k()) } else { (vp.pair().h(), 0) };
            let m = vs.len();
            if m != 2 * h + 2 * k + 2 {
                return Err(Error::Precondition(format!("frame of {m} vectors cannot carry a pair of type ({h}, {k})")));
            }
            let b1 = frame_1form_terms(vp.alpha(1), frame);
            let b2 = frame_1form_terms(vp.alpha(2), frame);
            let d1 = frame_2form_terms(&vp.d_alpha(1), frame);
            let d2 = frame_2form_terms(&vp.d_alpha(2), frame);
            let vol = wedge_terms(&wedge_terms(&wedge_terms(&b1, &terms_power(&d1, h)), &b2), &terms_power(&d2, k));
            let top: Vec<usize> = (0..m).collect();
            let c = vol.get(&top).cloned().unwrap_or_else(RatFun::zero);
            parts.push(nonvanishing_verdict(space, &c, vp.pair().sample_points(), &format!("restricted volume on {}", frame.label())));
            for (t, e, name) in [(&d1, h + 1, "dα1"), (&d2, k + 1, "dα2")] {
                let p = terms_power(t, e);
                parts.push(Verdict::check(p.is_empty(), format!("restricted ({name})^{e} = 0"), || format!("restricted ({name})^{e} ≠ 0 on {}", frame.label())));
            }
            let omega = vp.d_alpha(1).add(&vp.d_alpha(2))?;
            let mut fail = None;
            'outer2: for u in vs {
                for v in vs {
                    let lhs = g.apply(u, &phi.apply(v)?)?;
                    let rhs = omega.apply(&[u, v])?;
                    if lhs != rhs {
                        fail = Some(format!("g({}, φ{}) = {}, (dα1+dα2) gives {}", u.display(), v.display(), space.show(&lhs), space.show(&rhs)));
                        break 'outer2;
                    }
                }
                for l in 1..=2 {
                    if g.apply(u, vp.z(l))? != vp.alpha(l).apply(&[u])? {
                        fail = Some(format!("g({}, Z{l}) ≠ α{l}({})", u.display(), u.display()));
                        break 'outer2;
                    }
                }
            }
            for l in 1..=2 {
                if fail.is_none() && !frame.contains(vp.z(l)) {
                    fail = Some(format!("Z{l} ∉ {}", frame.label()));
                }
            }
            parts.push(match fail {
                None => Verdict::verified(format!("associated metric identities on {}", frame.label())),
                Some(w) => Verdict::failed(w, "leafwise associated metric"),
            });
        }
    }
    Ok(Verdict::all(format!("restriction to {}", frame.label()), &parts))
}

/// `g(u, v)` for frame vectors, as a Gram matrix.
pub fn gram(g: &MetricField, vs: &[VectorField]) -> RfMatrix {
    RfMatrix::from_fn(vs.len(), vs.len(), |r, c| dot(vs[r].components(), &g.matrix().mul_vec(vs[c].components())))
}
