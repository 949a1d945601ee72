//! Contact pair structures `(α1, α2, φ)`.

use crate::algebra::{outer, RatFun, RfMatrix};
use crate::error::{Error, Result};
use crate::exterior::{EndoField, SpaceRef, VectorField};
use crate::pair::{DistributionFrame, VerifiedPair};
use crate::verdict::Verdict;

/// Outcome of the structure axioms.
#[derive(Clone, Debug)]
pub struct StructureVerdicts {
    /// `φ² = -I + α1 ⊗ Z1 + α2 ⊗ Z2`.
    pub eq1: Verdict,
    /// `φ Z1 = φ Z2 = 0`.
    pub eq2: Verdict,
    /// `α_i ∘ φ = 0`.
    pub alpha_phi: Verdict,
    /// Generic rank of `φ` equals `n - 2`.
    pub rank: Verdict,
}

impl StructureVerdicts {
    pub fn all(&self) -> Verdict {
        Verdict::all("contact pair structure", [&self.eq1, &self.eq2, &self.alpha_phi, &self.rank])
    }
}

fn first_mismatch(space: &SpaceRef, lhs: &RfMatrix, rhs: &RfMatrix, what: &str) -> Option<String> {
    for c in 0..lhs.cols() {
        for r in 0..lhs.rows() {
            if lhs[(r, c)] != rhs[(r, c)] {
                return Some(format!(
                    "{}-component of {what}({}) is {}, expected {}",
                    space.names()[r],
                    space.basis_vector_name(c),
                    space.show(&lhs[(r, c)]),
                    space.show(&rhs[(r, c)])
                ));
            }
        }
    }
    None
}

/// The right-hand side `-I + Z1 a1ᵀ + Z2 a2ᵀ` of the first axiom.
pub fn eq1_target(vp: &VerifiedPair) -> RfMatrix {
    let n = vp.dim();
    let z1 = outer(vp.z(1).components(), &vp.alpha_vec(1));
    let z2 = outer(vp.z(2).components(), &vp.alpha_vec(2));
    &(&(-&RfMatrix::identity(n)) + &z1) + &z2
}

pub fn verify_structure(vp: &VerifiedPair, phi: &EndoField) -> StructureVerdicts {
    let space = vp.space();
    if crate::exterior::space::same_space(space, phi.space()).is_err() {
        let f = || Verdict::failed("φ lives on a different space", "space mismatch");
        return StructureVerdicts { eq1: f(), eq2: f(), alpha_phi: f(), rank: f() };
    }
    let n = vp.dim();
    let m = phi.matrix();
    let sq = m * m;
    let target = eq1_target(vp);
    let eq1 = match first_mismatch(space, &sq, &target, "φ²") {
        None => Verdict::verified("φ² = -I + α1⊗Z1 + α2⊗Z2 identically"),
        Some(w) => Verdict::failed(w, "φ² = -I + α1⊗Z1 + α2⊗Z2"),
    };

    let mut eq2_fail = None;
    for i in 1..=2 {
        let img = m.mul_vec(vp.z(i).components());
        if let Some(a) = img.iter().position(|c| !c.is_zero()) {
            eq2_fail = Some(format!("{}-component of φ(Z{i}) is {}", space.names()[a], space.show(&img[a])));
            break;
        }
    }
    let eq2 = match eq2_fail {
        None => Verdict::verified("φ(Z1) = φ(Z2) = 0"),
        Some(w) => Verdict::failed(w, "φ(Z1) = φ(Z2) = 0"),
    };

    let mut ap_fail = None;
    'outer: for i in 1..=2 {
        let a = vp.alpha_vec(i);
        for c in 0..n {
            let v = crate::algebra::dot(&a, &m.column(c));
            if !v.is_zero() {
                ap_fail = Some(format!("α{i}(φ({})) = {}", space.basis_vector_name(c), space.show(&v)));
                break 'outer;
            }
        }
    }
    let alpha_phi = match ap_fail {
        None => Verdict::verified("α_i ∘ φ = 0"),
        Some(w) => Verdict::failed(w, "α_i ∘ φ = 0"),
    };

    let r = m.generic_rank();
    let rank = Verdict::check(r + 2 == n, format!("rank φ = {}", n - 2), || format!("generic rank of φ is {r}, expected {}", n - 2));
    StructureVerdicts { eq1, eq2, alpha_phi, rank }
}

#[derive(Clone, Debug)]
pub struct ContactPairStructure {
    vp: VerifiedPair,
    phi: EndoField,
}

impl ContactPairStructure {
    /// Requires both structure axioms to hold exactly.
    pub fn new(vp: VerifiedPair, phi: EndoField) -> Result<ContactPairStructure> {
        let v = verify_structure(&vp, &phi);
        for part in [&v.eq1, &v.eq2] {
            if let Some(w) = part.witness() {
                return Err(Error::NotAStructure(w.to_string()));
            }
        }
        Ok(ContactPairStructure { vp, phi })
    }

    pub fn vp(&self) -> &VerifiedPair {
        &self.vp
    }

    pub fn phi(&self) -> &EndoField {
        &self.phi
    }

    pub fn space(&self) -> &SpaceRef {
        self.vp.space()
    }
}

/// One violation of `φ(TF_i) ⊂ TF_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub i: usize,
    pub vector: VectorField,
    pub image: VectorField,
}

impl Violation {
    pub fn describe(&self) -> String {
        format!("TF{}: φ({}) = {} ∉ TF{}", self.i, self.vector.display(), self.image.display(), self.i)
    }
}

/// All frame vectors of `TF_1`, `TF_2` whose image leaves the distribution.
pub fn decomposability_violations(cps: &ContactPairStructure) -> Vec<Violation> {
    let vp = cps.vp();
    let mut out = Vec::new();
    for i in 1..=2 {
        let a = vp.alpha(i);
        let d = vp.d_alpha(i);
        for v in vp.tf(i).vectors() {
            let img = cps.phi.apply(v).expect("same space");
            let ok = a.apply(&[&img]).expect("same space").is_zero() && d.interior(&img).expect("same space").is_zero();
            if !ok {
                out.push(Violation { i, vector: v.clone(), image: img });
            }
        }
    }
    out
}

pub fn is_decomposable(cps: &ContactPairStructure) -> Verdict {
    let vs = decomposability_violations(cps);
    match vs.first() {
        None => Verdict::verified("φ(TF_i) ⊂ TF_i for i = 1, 2"),
        Some(v) => Verdict::failed(v.describe(), format!("{} frame vectors leave their distribution", vs.len())),
    }
}

/// `φ` maps every vector of `frame` into its generic span.
pub fn preserves_frame(phi: &EndoField, frame: &DistributionFrame) -> Verdict {
    for v in frame.vectors() {
        let img = phi.apply(v).expect("same space");
        if !frame.contains(&img) {
            return Verdict::failed(format!("φ({}) = {} leaves {}", v.display(), img.display(), frame.label()), "φ-invariance");
        }
    }
    Verdict::verified(format!("φ preserves {}", frame.label()))
}

/// An almost complex structure on a subbundle, in frame coordinates.
#[derive(Clone, Debug)]
pub struct SubbundleComplexStructure {
    frame: DistributionFrame,
    matrix: RfMatrix,
}

impl SubbundleComplexStructure {
    /// Column `b` of `matrix` holds the frame coordinates of `J(f_b)`.
    pub fn new(frame: DistributionFrame, matrix: RfMatrix) -> Result<SubbundleComplexStructure> {
        let m = frame.len();
        if matrix.rows() != m || matrix.cols() != m {
            return Err(Error::Dimension(format!("{}x{} J on a frame of {m} vectors", matrix.rows(), matrix.cols())));
        }
        let sq = &matrix * &matrix;
        if sq != -&RfMatrix::identity(m) {
            let (r, c, v) = (&sq + &RfMatrix::identity(m)).first_nonzero().map(|(r, c, v)| (r, c, v.clone())).expect("nonzero");
            return Err(Error::NotComplex(format!("(J² + I)[{r}][{c}] = {v}")));
        }
        Ok(SubbundleComplexStructure { frame, matrix })
    }

    /// `J(f_{2j}) = -f_{2j+1}`, `J(f_{2j+1}) = f_{2j}` on consecutive pairs.
    pub fn standard_blocks(frame: DistributionFrame) -> Result<SubbundleComplexStructure> {
        let m = frame.len();
        if m % 2 == 1 {
            return Err(Error::NotComplex(format!("odd rank {m}")));
        }
        let matrix = RfMatrix::from_fn(m, m, |r, c| {
            if r % 2 == 0 && c == r + 1 {
                RatFun::one()
            } else if c % 2 == 0 && r == c + 1 {
                RatFun::from_int(-1)
            } else {
                RatFun::zero()
            }
        });
        SubbundleComplexStructure::new(frame, matrix)
    }

    pub fn frame(&self) -> &DistributionFrame {
        &self.frame
    }

    pub fn matrix(&self) -> &RfMatrix {
        &self.matrix
    }
}

/// Endomorphism equal to `J` on the frame, sending `Z1 ↦ img1`, `Z2 ↦ img2`.
pub fn assemble_phi(vp: &VerifiedPair, j: &SubbundleComplexStructure, img1: &VectorField, img2: &VectorField) -> Result<EndoField> {
    let n = vp.dim();
    let frame = j.frame();
    if frame.len() + 2 != n {
        return Err(Error::Precondition(format!("frame has {} vectors, TG1 ⊕ TG2 has rank {}", frame.len(), n - 2)));
    }
    for v in frame.vectors() {
        for i in 1..=2 {
            let a = vp.alpha(i).apply(&[v])?;
            if !a.is_zero() {
                return Err(Error::Precondition(format!("α{i}({}) = {} so the frame is not in TG1 ⊕ TG2", v.display(), vp.space().show(&a))));
            }
        }
    }
    let f = frame.matrix();
    let fj = &f * j.matrix();
    let mut basis_cols: Vec<Vec<RatFun>> = (0..frame.len()).map(|c| f.column(c)).collect();
    basis_cols.push(vp.z(1).components().to_vec());
    basis_cols.push(vp.z(2).components().to_vec());
    let b = RfMatrix::from_columns(n, &basis_cols);
    let b_inv = b.inverse().ok_or_else(|| Error::Precondition("frame and Reeb fields do not span TM".into()))?;
    let mut image_cols: Vec<Vec<RatFun>> = (0..frame.len()).map(|c| fj.column(c)).collect();
    image_cols.push(img1.components().to_vec());
    image_cols.push(img2.components().to_vec());
    let phi = &RfMatrix::from_columns(n, &image_cols) * &b_inv;
    EndoField::new(vp.space(), phi)
}

/// Extend `J` by zero on the Reeb fields.
pub fn build_phi(vp: &VerifiedPair, j: &SubbundleComplexStructure) -> Result<EndoField> {
    let zero = VectorField::zero(vp.space());
    let phi = assemble_phi(vp, j, &zero, &zero)?;
    let v = verify_structure(vp, &phi);
    if let Some(w) = v.all().witness() {
        return Err(Error::NotAStructure(w.to_string()));
    }
    Ok(phi)
}

/// On the leaves of `TF_j`, `(φ, Z_i, α_i)` is an almost contact structure:
/// `φ²v = -v + α_i(v) Z_i` for frame vectors and `Z_i` lies in the frame.
pub fn verify_induced_almost_contact(cps: &ContactPairStructure, leaf_frame: &DistributionFrame, i: usize) -> Result<Verdict> {
    if let Some(w) = is_decomposable(cps).witness() {
        return Err(Error::Precondition(format!("structure is not decomposable: {w}")));
    }
    let vp = cps.vp();
    let zi = vp.z(i);
    let ai = vp.alpha(i);
    for v in leaf_frame.vectors() {
        let lhs = cps.phi.apply(&cps.phi.apply(v)?)?;
        let rhs = zi.scale(&ai.apply(&[v])?).sub(v)?;
        if lhs != rhs {
            return Ok(Verdict::failed(
                format!("φ²({}) = {}, expected {}", v.display(), lhs.display(), rhs.display()),
                "induced almost contact structure",
            ));
        }
    }
    if !leaf_frame.contains(zi) {
        return Ok(Verdict::failed(format!("Z{i} ∉ {}", leaf_frame.label()), "induced almost contact structure"));
    }
    Ok(Verdict::verified(format!("(φ, Z{i}, α{i}) is almost contact on {}", leaf_frame.label())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Rational};
    use crate::exterior::{Form, Space};
    use crate::pair::{ContactPair, FrameLabel};

    fn c(v: i64) -> RatFun {
        RatFun::from_int(v)
    }

    fn x(i: usize) -> RatFun {
        RatFun::var(i)
    }

    fn origin() -> Vec<Vec<Rational>> {
        vec![vec![int(0); 6]]
    }

    fn r6() -> VerifiedPair {
        let s = Space::chart(["x1", "y1", "x2", "y2", "z1", "z2"]).unwrap();
        let a1 = Form::from_terms(&s, 1, [(vec![4], c(1)), (vec![1], -&x(0))]).unwrap();
        let a2 = Form::from_terms(&s, 1, [(vec![5], c(1)), (vec![3], -&x(2))]).unwrap();
        VerifiedPair::new(ContactPair::new(&s, a1, a2, (1, 1), origin()).unwrap()).unwrap()
    }

    fn r6_phi(vp: &VerifiedPair) -> EndoField {
        let z = c(0);
        let rows = vec![
            vec![z.clone(), z.clone(), c(-1), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), c(-1), z.clone(), z.clone()],
            vec![c(1), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), c(1), z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), -&x(0), z.clone(), z.clone()],
            vec![z.clone(), x(2), z.clone(), z.clone(), z.clone(), z],
        ];
        EndoField::new(vp.space(), RfMatrix::from_rows(rows)).unwrap()
    }

    fn local_model() -> VerifiedPair {
        let s = Space::chart(["x1", "x2", "x3", "y1", "y2", "y3"]).unwrap();
        let a1 = Form::from_terms(&s, 1, [(vec![2], c(1)), (vec![1], x(0))]).unwrap();
        let a2 = Form::from_terms(&s, 1, [(vec![5], c(1)), (vec![4], x(3))]).unwrap();
        VerifiedPair::new(ContactPair::new(&s, a1, a2, (1, 1), origin()).unwrap()).unwrap()
    }

    #[test]
    fn r6_structure_holds() {
        let vp = r6();
        let v = verify_structure(&vp, &r6_phi(&vp));
        assert!(v.eq1.is_verified(), "{:?}", v.eq1);
        assert!(v.eq2.is_verified() && v.alpha_phi.is_verified() && v.rank.is_verified());
    }

    #[test]
    fn r6_not_decomposable() {
        let vp = r6();
        let phi = r6_phi(&vp);
        let cps = ContactPairStructure::new(vp, phi).unwrap();
        assert!(is_decomposable(&cps).is_failed());
        let s = cps.space().clone();
        let dx1 = VectorField::basis(&s, 0);
        let vs = decomposability_violations(&cps);
        let hit = vs.iter().find(|v| v.i == 2 && v.vector == dx1).expect("∂x1 violates TF2");
        assert_eq!(hit.image, VectorField::basis(&s, 2));
    }

    #[test]
    fn zero_endomorphism_fails_eq1() {
        let vp = r6();
        let v = verify_structure(&vp, &EndoField::zero(vp.space()));
        assert!(v.eq1.is_failed() && v.eq2.is_verified());
    }

    #[test]
    fn local_model_block_phi() {
        let vp = local_model();
        let frame = vp.tg(1).join(vp.tg(2), FrameLabel::Custom("TG".into()));
        let j = SubbundleComplexStructure::standard_blocks(frame).unwrap();
        let phi = build_phi(&vp, &j).unwrap();
        let cps = ContactPairStructure::new(vp, phi).unwrap();
        assert!(is_decomposable(&cps).is_verified());
        for i in 1..=2 {
            assert!(preserves_frame(cps.phi(), cps.vp().tg(i)).is_verified());
        }
        let (tf1, tf2) = (cps.vp().tf(1).clone(), cps.vp().tf(2).clone());
        assert!(verify_induced_almost_contact(&cps, &tf2, 1).unwrap().is_verified());
        assert!(verify_induced_almost_contact(&cps, &tf1, 2).unwrap().is_verified());
    }

    #[test]
    fn local_model_cross_block_phi() {
        let vp = local_model();
        let (g1, g2) = (vp.tg(1).vectors(), vp.tg(2).vectors());
        let vectors = vec![g1[0].clone(), g2[0].clone(), g1[1].clone(), g2[1].clone()];
        let frame = DistributionFrame::new(vp.space(), vectors, FrameLabel::Custom("mixed".into())).unwrap();
        let phi = build_phi(&vp, &SubbundleComplexStructure::standard_blocks(frame).unwrap()).unwrap();
        let cps = ContactPairStructure::new(vp, phi).unwrap();
        assert!(is_decomposable(&cps).is_failed());
    }

    #[test]
    fn reeb_images_break_eq2_only() {
        let vp = local_model();
        let frame = vp.tg(1).join(vp.tg(2), FrameLabel::Custom("TG".into()));
        let j = SubbundleComplexStructure::standard_blocks(frame).unwrap();
        let w = vp.z(1).add(vp.z(2)).unwrap();
        let phi = assemble_phi(&vp, &j, &w, &w.scale(&c(-1))).unwrap();
        let v = verify_structure(&vp, &phi);
        assert!(v.eq1.is_verified());
        assert!(v.eq2.is_failed());
        assert!(ContactPairStructure::new(vp, phi).is_err());
    }

    #[test]
    fn j_must_square_to_minus_one() {
        let vp = local_model();
        let frame = vp.tg(1).clone();
        let e = SubbundleComplexStructure::new(frame, RfMatrix::identity(2)).unwrap_err();
        assert!(matches!(e, Error::NotComplex(_)));
    }
}
