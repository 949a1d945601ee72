//! Contact pairs: the defining axioms, Reeb fields and the distributions
//! `TF_i = ker α_i ∩ ker dα_i`, `TG_i = ker dα_i ∩ ker α_1 ∩ ker α_2`.

use std::fmt;

use crate::algebra::{kernel_basis, solve_linear_exact, RatFun, Rational, RfMatrix};
use crate::error::{Error, Result};
use crate::exterior::{Form, SpaceRef, VectorField};
use crate::verdict::Verdict;

pub use crate::verdict::Status;

#[derive(Clone, Debug)]
pub struct ContactPair {
    space: SpaceRef,
    alpha1: Form,
    alpha2: Form,
    h: usize,
    k: usize,
    sample_points: Vec<Vec<Rational>>,
}

impl ContactPair {
    pub fn new(
        space: &SpaceRef,
        alpha1: Form,
        alpha2: Form,
        (h, k): (usize, usize),
        sample_points: Vec<Vec<Rational>>,
    ) -> Result<ContactPair> {
        let n = space.dim();
        if 2 * h + 2 * k + 2 != n {
            return Err(Error::InvalidType { h, k, n });
        }
        for a in [&alpha1, &alpha2] {
            if a.degree() != 1 {
                return Err(Error::NotOneForm(a.degree()));
            }
            crate::exterior::space::same_space(space, a.space())?;
        }
        if sample_points.is_empty() {
            return Err(Error::NoSamplePoints);
        }
        if space.is_chart() {
            if let Some(p) = sample_points.iter().find(|p| p.len() != n) {
                return Err(Error::Dimension(format!("sample point of length {} on a {n}-chart", p.len())));
            }
        }
        Ok(ContactPair { space: space.clone(), alpha1, alpha2, h, k, sample_points })
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    /// `α_i` for `i ∈ {1, 2}`.
    pub fn alpha(&self, i: usize) -> &Form {
        match i {
            1 => &self.alpha1,
            2 => &self.alpha2,
            _ => panic!("index must be 1 or 2"),
        }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sample_points(&self) -> &[Vec<Rational>] {
        &self.sample_points
    }

    pub fn with_sample_points(mut self, extra: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        self.sample_points.extend(extra);
        self
    }
}

/// Verdicts for the three defining conditions.
#[derive(Clone, Debug)]
pub struct PairAxioms {
    /// `α1∧(dα1)^h∧α2∧(dα2)^k` is a volume form.
    pub volume: Verdict,
    /// `(dα1)^{h+1} = 0`.
    pub d_alpha1_power: Verdict,
    /// `(dα2)^{k+1} = 0`.
    pub d_alpha2_power: Verdict,
    pub volume_coefficient: RatFun,
}

impl PairAxioms {
    pub fn any_failed(&self) -> bool {
        [&self.volume, &self.d_alpha1_power, &self.d_alpha2_power].iter().any(|v| v.is_failed())
    }
}

/// Check a top-degree coefficient: nonzero constant, or nonvanishing at every sample point.
pub fn nonvanishing_verdict(space: &SpaceRef, c: &RatFun, points: &[Vec<Rational>], what: &str) -> Verdict {
    if c.is_zero() {
        return Verdict::failed("c ≡ 0", format!("{what}: coefficient is identically zero"));
    }
    if let Some(v) = c.as_constant() {
        return Verdict::verified(format!("{what}: constant coefficient {v}"));
    }
    for p in points {
        match c.eval(p) {
            Some(v) if !num_traits::Zero::is_zero(&v) => {}
            _ => {
                return Verdict::failed(
                    format!("c = {} vanishes at {}", space.show(c), show_point(p)),
                    format!("{what}: coefficient vanishes at a sample point"),
                )
            }
        }
    }
    Verdict::sample_verified(points.len(), format!("{what}: coefficient {} nonzero at all sample points", space.show(c)))
}

pub fn show_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn verify_contact_pair(pair: &ContactPair) -> PairAxioms {
    let (a1, a2) = (&pair.alpha1, &pair.alpha2);
    let (d1, d2) = (a1.ext_d(), a2.ext_d());
    let vol = a1
        .wedge(&d1.power(pair.h))
        .and_then(|f| f.wedge(a2))
        .and_then(|f| f.wedge(&d2.power(pair.k)))
        .expect("same space");
    let c = vol.top_coefficient();
    let volume = nonvanishing_verdict(&pair.space, &c, &pair.sample_points, "volume form");
    let power = |d: &Form, e: usize, name: &str| {
        let p = d.power(e);
        Verdict::check(p.is_zero(), format!("(d{name})^{e} ≡ 0"), || format!("(d{name})^{e} = {}", p.display()))
    };
    PairAxioms {
        volume,
        d_alpha1_power: power(&d1, pair.h + 1, "α1"),
        d_alpha2_power: power(&d2, pair.k + 1, "α2"),
        volume_coefficient: c,
    }
}

/// Rows expressing `i_X β = 0` for a 2-form: row `b` is `(β(e_a, e_b))_a`.
fn contraction_rows(beta: &Form) -> RfMatrix {
    beta.as_matrix().expect("2-form").transpose()
}

fn one_form_row(a: &Form) -> RfMatrix {
    RfMatrix::from_rows(vec![a.components()])
}

/// Solve `α_i(Z) = δ_ij`, `i_Z dα_1 = i_Z dα_2 = 0` for `Z = Z_j`.
fn solve_reeb(pair: &ContactPair, j: usize) -> Result<VectorField> {
    let n = pair.space.dim();
    let (d1, d2) = (pair.alpha1.ext_d(), pair.alpha2.ext_d());
    let a = one_form_row(&pair.alpha1)
        .vstack(&one_form_row(&pair.alpha2))
        .vstack(&contraction_rows(&d1))
        .vstack(&contraction_rows(&d2));
    let mut b = vec![RatFun::zero(); a.rows()];
    b[j - 1] = RatFun::one();
    let sol = solve_linear_exact(&a, &b).map_err(|_| Error::ReebInconsistent)?;
    if !sol.kernel.is_empty() {
        return Err(Error::ReebNonUnique(sol.kernel.len()));
    }
    debug_assert_eq!(sol.particular.len(), n);
    VectorField::new(&pair.space, sol.particular)
}

/// The eight defining identities plus `[Z1, Z2] = 0`, checked exactly.
pub fn reeb_identities(pair: &ContactPair, z1: &VectorField, z2: &VectorField) -> Result<Verdict> {
    let zs = [z1, z2];
    let mut failures = Vec::new();
    for i in 1..=2 {
        let a = pair.alpha(i);
        let d = a.ext_d();
        for (j, z) in zs.iter().enumerate() {
            let j = j + 1;
            let expected = if i == j { RatFun::one() } else { RatFun::zero() };
            let v = a.apply(&[z])?;
            if v != expected {
                failures.push(format!("α{i}(Z{j}) = {}", pair.space.show(&v)));
            }
            let c = d.interior(z)?;
            if !c.is_zero() {
                failures.push(format!("i_Z{j} dα{i} = {}", c.display()));
            }
        }
    }
    let br = z1.bracket(z2)?;
    if !br.is_zero() {
        failures.push(format!("[Z1, Z2] = {}", br.display()));
    }
    Ok(match failures.first() {
        None => Verdict::verified("α_i(Z_j) = δ_ij, i_{Z_j} dα_i = 0, [Z1, Z2] = 0 identically"),
        Some(w) => Verdict::failed(w.clone(), format!("{} Reeb identities fail", failures.len())),
    })
}

pub fn reeb_fields(pair: &ContactPair) -> Result<(VectorField, VectorField)> {
    let z1 = solve_reeb(pair, 1)?;
    let z2 = solve_reeb(pair, 2)?;
    let v = reeb_identities(pair, &z1, &z2)?;
    if let Some(w) = v.witness() {
        return Err(Error::ReebPostCheck(w.to_string()));
    }
    Ok((z1, z2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameLabel {
    TF1,
    TF2,
    TG1,
    TG2,
    KerDAlpha1,
    KerDAlpha2,
    Custom(String),
}

impl fmt::Display for FrameLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameLabel::TF1 => write!(f, "TF1"),
            FrameLabel::TF2 => write!(f, "TF2"),
            FrameLabel::TG1 => write!(f, "TG1"),
            FrameLabel::TG2 => write!(f, "TG2"),
            FrameLabel::KerDAlpha1 => write!(f, "ker dα1"),
            FrameLabel::KerDAlpha2 => write!(f, "ker dα2"),
            FrameLabel::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// Generically independent vector fields spanning a distribution.
#[derive(Clone, Debug)]
pub struct DistributionFrame {
    space: SpaceRef,
    vectors: Vec<VectorField>,
    label: FrameLabel,
}

impl DistributionFrame {
    pub fn new(space: &SpaceRef, vectors: Vec<VectorField>, label: FrameLabel) -> Result<DistributionFrame> {
        let f = DistributionFrame { space: space.clone(), vectors, label };
        let r = f.rank();
        if r != f.vectors.len() {
            return Err(Error::FrameRank { label: f.label.to_string(), expected: f.vectors.len(), actual: r });
        }
        Ok(f)
    }

    /// Frame of the null space of `rows` (polynomial vectors).
    pub fn kernel_of(space: &SpaceRef, rows: &RfMatrix, label: FrameLabel) -> DistributionFrame {
        let vectors = kernel_basis(rows)
            .into_iter()
            .map(|v| VectorField::new(space, v.into_iter().map(RatFun::from).collect()).expect("kernel vector on space"))
            .collect();
        DistributionFrame { space: space.clone(), vectors, label }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn vectors(&self) -> &[VectorField] {
        &self.vectors
    }

    pub fn label(&self) -> &FrameLabel {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `n × m` matrix whose columns are the frame vectors.
    pub fn matrix(&self) -> RfMatrix {
        let cols: Vec<Vec<RatFun>> = self.vectors.iter().map(|v| v.components().to_vec()).collect();
        RfMatrix::from_columns(self.space.dim(), &cols)
    }

    pub fn rank(&self) -> usize {
        if self.vectors.is_empty() {
            0
        } else {
            self.matrix().generic_rank()
        }
    }

    /// Generic membership: adjoining `v` does not raise the rank.
    pub fn contains(&self, v: &VectorField) -> bool {
        let mut cols: Vec<Vec<RatFun>> = self.vectors.iter().map(|v| v.components().to_vec()).collect();
        cols.push(v.components().to_vec());
        RfMatrix::from_columns(self.space.dim(), &cols).generic_rank() == self.rank()
    }

    /// Concatenate frames (no rank check).
    pub fn join(&self, other: &DistributionFrame, label: FrameLabel) -> DistributionFrame {
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        DistributionFrame { space: self.space.clone(), vectors, label }
    }

    pub fn with_vector(&self, v: &VectorField, label: FrameLabel) -> DistributionFrame {
        let mut vectors = self.vectors.clone();
        vectors.push(v.clone());
        DistributionFrame { space: self.space.clone(), vectors, label }
    }

    pub fn display(&self) -> String {
        let v: Vec<String> = self.vectors.iter().map(VectorField::display).collect();
        format!("{} = span{{{}}}", self.label, v.join(", "))
    }
}

fn expect_rank(frame: DistributionFrame, expected: usize) -> Result<DistributionFrame> {
    if frame.len() != expected {
        return Err(Error::FrameRank { label: frame.label.to_string(), expected, actual: frame.len() });
    }
    Ok(frame)
}

/// `TF_which = ker α_which ∩ ker dα_which`; rank `2k+1` for 1, `2h+1` for 2.
pub fn characteristic_frame(pair: &ContactPair, which: usize) -> Result<DistributionFrame> {
    let a = pair.alpha(which);
    let rows = one_form_row(a).vstack(&contraction_rows(&a.ext_d()));
    let (label, expected) = if which == 1 { (FrameLabel::TF1, 2 * pair.k + 1) } else { (FrameLabel::TF2, 2 * pair.h + 1) };
    expect_rank(DistributionFrame::kernel_of(&pair.space, &rows, label), expected)
}

/// `TG_i = ker dα_i ∩ ker α1 ∩ ker α2`; rank `2k` for 1, `2h` for 2.
pub fn g_frame(pair: &ContactPair, i: usize) -> Result<DistributionFrame> {
    let rows = one_form_row(&pair.alpha1).vstack(&one_form_row(&pair.alpha2)).vstack(&contraction_rows(&pair.alpha(i).ext_d()));
    let (label, expected) = if i == 1 { (FrameLabel::TG1, 2 * pair.k) } else { (FrameLabel::TG2, 2 * pair.h) };
    expect_rank(DistributionFrame::kernel_of(&pair.space, &rows, label), expected)
}

/// `ker dα_i`; rank `2k+2` for 1, `2h+2` for 2.
pub fn ker_d_alpha_frame(pair: &ContactPair, i: usize) -> Result<DistributionFrame> {
    let rows = contraction_rows(&pair.alpha(i).ext_d());
    let (label, expected) = if i == 1 { (FrameLabel::KerDAlpha1, 2 * pair.k + 2) } else { (FrameLabel::KerDAlpha2, 2 * pair.h + 2) };
    expect_rank(DistributionFrame::kernel_of(&pair.space, &rows, label), expected)
}

/// A contact pair whose axioms did not fail, with its Reeb fields and frames.
#[derive(Clone, Debug)]
pub struct VerifiedPair {
    pair: ContactPair,
    axioms: PairAxioms,
    z1: VectorField,
    z2: VectorField,
    tf1: DistributionFrame,
    tf2: DistributionFrame,
    tg1: DistributionFrame,
    tg2: DistributionFrame,
}

impl VerifiedPair {
    pub fn new(pair: ContactPair) -> Result<VerifiedPair> {
        let axioms = verify_contact_pair(&pair);
        if axioms.any_failed() {
            let w = [&axioms.volume, &axioms.d_alpha1_power, &axioms.d_alpha2_power]
                .iter()
                .find_map(|v| v.witness().map(str::to_string))
                .unwrap_or_default();
            return Err(Error::Precondition(format!("contact pair axioms fail: {w}")));
        }
        let (z1, z2) = reeb_fields(&pair)?;
        let tf1 = characteristic_frame(&pair, 1)?;
        let tf2 = characteristic_frame(&pair, 2)?;
        let tg1 = g_frame(&pair, 1)?;
        let tg2 = g_frame(&pair, 2)?;
        Ok(VerifiedPair { pair, axioms, z1, z2, tf1, tf2, tg1, tg2 })
    }

    pub fn pair(&self) -> &ContactPair {
        &self.pair
    }

    pub fn axioms(&self) -> &PairAxioms {
        &self.axioms
    }

    pub fn space(&self) -> &SpaceRef {
        self.pair.space()
    }

    pub fn dim(&self) -> usize {
        self.pair.space.dim()
    }

    pub fn alpha(&self, i: usize) -> &Form {
        self.pair.alpha(i)
    }

    pub fn d_alpha(&self, i: usize) -> Form {
        self.pair.alpha(i).ext_d()
    }

    pub fn z(&self, i: usize) -> &VectorField {
        match i {
            1 => &self.z1,
            2 => &self.z2,
            _ => panic!("index must be 1 or 2"),
        }
    }

    pub fn tf(&self, i: usize) -> &DistributionFrame {
        if i == 1 {
            &self.tf1
        } else {
            &self.tf2
        }
    }

    pub fn tg(&self, i: usize) -> &DistributionFrame {
        if i == 1 {
            &self.tg1
        } else {
            &self.tg2
        }
    }

    pub fn ker_d_alpha(&self, i: usize) -> Result<DistributionFrame> {
        ker_d_alpha_frame(&self.pair, i)
    }

    /// `TG1 ⊕ TG2` frame, TG1 vectors first.
    pub fn tg_sum(&self) -> DistributionFrame {
        self.tg1.join(&self.tg2, FrameLabel::Custom("TG1⊕TG2".into()))
    }

    /// Coefficient vector of `α_i`.
    pub fn alpha_vec(&self, i: usize) -> Vec<RatFun> {
        self.alpha(i).components()
    }
}

/// `TM = TF1 ⊕ TF2 = TG1 ⊕ TG2 ⊕ ℝZ1 ⊕ ℝZ2` and `TF_i = TG_i ⊕ ℝZ_j`.
pub fn verify_splittings(vp: &VerifiedPair) -> Verdict {
    let n = vp.dim();
    let mut failures = Vec::new();
    let tf_sum = vp.tf1.join(&vp.tf2, FrameLabel::Custom("TF1+TF2".into()));
    let r = tf_sum.rank();
    if r != n {
        failures.push(format!("rank(TF1 + TF2) = {r} < {n}"));
    }
    let full = vp.tg_sum().with_vector(&vp.z1, FrameLabel::Custom("all".into())).with_vector(&vp.z2, FrameLabel::Custom("all".into()));
    let r = full.rank();
    if r != n {
        failures.push(format!("rank(TG1 + TG2 + Z1 + Z2) = {r} < {n}"));
    }
    for (i, j) in [(1, 2), (2, 1)] {
        let tf = vp.tf(i);
        let tg = vp.tg(i);
        let split = tg.with_vector(vp.z(j), FrameLabel::Custom(format!("TG{i}+Z{j}")));
        let rs = split.rank();
        if rs != tf.len() {
            failures.push(format!("rank(TG{i} + Z{j}) = {rs}, dim TF{i} = {}", tf.len()));
        }
        if let Some(v) = split.vectors().iter().find(|v| !tf.contains(v)) {
            failures.push(format!("{} ∉ TF{i}", v.display()));
        }
    }
    let detail = format!("TF1 ⊕ TF2: {} + {} = {n}; TF_i = TG_i ⊕ ℝZ_j", vp.tf1.len(), vp.tf2.len());
    match failures.first() {
        None => Verdict::verified(detail),
        Some(w) => Verdict::failed(w.clone(), detail),
    }
}
