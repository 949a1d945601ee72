//! Levi-Civita connection and the geodesy of the Reeb action.

use nalgebra::DMatrix;

use crate::algebra::{RatFun, RfMatrix};
use crate::error::{Error, Result};
use crate::exterior::{MetricField, SpaceRef, VectorField};
use crate::metric::is_compatible;
use crate::structure::ContactPairStructure;
use crate::verdict::Verdict;

/// Connection coefficients `∇_{e_a} e_b = Σ_c Γ^c_{ab} e_c`, stored as `gamma[c][a][b]`.
#[derive(Clone, Debug)]
pub struct ChristoffelData {
    space: SpaceRef,
    gamma: Vec<Vec<Vec<RatFun>>>,
}

/// Christoffel symbols of a chart metric, or Koszul coefficients of a
/// left-invariant metric on a Lie frame.
pub fn christoffel(g: &MetricField) -> Result<ChristoffelData> {
    let space = g.space().clone();
    let n = space.dim();
    let gm = g.matrix();
    let inv = gm.inverse().ok_or_else(|| Error::DegenerateMetric("metric is not invertible".into()))?;
    // k[a][b][d] = g(∇_{e_a} e_b, e_d)
    let mut k = vec![vec![vec![RatFun::zero(); n]; n]; n];
    let half = crate::algebra::rat(1, 2);
    let dg: Vec<RfMatrix> = (0..n).map(|a| gm.map(|e| space.derive(e, a))).collect();
    let basis: Vec<VectorField> = (0..n).map(|a| VectorField::basis(&space, a)).collect();
    let br = |a: usize, b: usize| basis[a].bracket(&basis[b]).expect("same space");
    let gb = |v: &VectorField, d: usize| crate::algebra::dot(v.components(), &gm.column(d));
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let mut s = &(&dg[a][(b, d)] + &dg[b][(a, d)]) - &dg[d][(a, b)];
                if space.is_lie() {
                    s = &(&(&s + &gb(&br(a, b), d)) - &gb(&br(b, d), a)) + &gb(&br(d, a), b);
                }
                k[a][b][d] = s.scale(&half);
            }
        }
    }
    let gamma = (0..n)
        .map(|c| {
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| (0..n).fold(RatFun::zero(), |acc, d| if inv[(c, d)].is_zero() || k[a][b][d].is_zero() { acc } else { &acc + &(&inv[(c, d)] * &k[a][b][d]) }))
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(ChristoffelData { space, gamma })
}

impl ChristoffelData {
    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    /// `Γ^c_{ab}`.
    pub fn symbol(&self, c: usize, a: usize, b: usize) -> &RatFun {
        &self.gamma[c][a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().flatten().all(RatFun::is_zero)
    }

    /// `(∇_X Y)^c = Σ_a X^a (e_a(Y^c) + Σ_b Γ^c_{ab} Y^b)`.
    pub fn covariant_derivative(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        crate::exterior::space::same_space(&self.space, x.space())?;
        crate::exterior::space::same_space(&self.space, y.space())?;
        let n = self.space.dim();
        let xs = x.components();
        let ys = y.components();
        let mut out = Vec::with_capacity(n);
        for c in 0..n {
            let mut acc = x.derive(&ys[c]);
            for (a, xa) in xs.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for (b, yb) in ys.iter().enumerate() {
                    let gam = &self.gamma[c][a][b];
                    if yb.is_zero() || gam.is_zero() {
                        continue;
                    }
                    acc = &acc + &(&(xa * gam) * yb);
                }
            }
            out.push(acc);
        }
        VectorField::new(&self.space, out)
    }

    /// `∇_X Y - ∇_Y X - [X, Y]`.
    pub fn torsion(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        self.covariant_derivative(x, y)?.sub(&self.covariant_derivative(y, x)?)?.sub(&x.bracket(y)?)
    }

    /// Torsion vanishes on all pairs of basis fields.
    pub fn check_torsion_free(&self) -> Verdict {
        let n = self.space.dim();
        for a in 0..n {
            for b in a + 1..n {
                let t = self
                    .torsion(&VectorField::basis(&self.space, a), &VectorField::basis(&self.space, b))
                    .expect("same space");
                if !t.is_zero() {
                    return Verdict::failed(
                        format!("T({}, {}) = {}", self.space.basis_vector_name(a), self.space.basis_vector_name(b), t.display()),
                        "torsion-free",
                    );
                }
            }
        }
        Verdict::verified("torsion-free")
    }

    /// `e_a(g_bc) = Σ_d (Γ^d_{ab} g_dc + Γ^d_{ac} g_bd)`.
    pub fn check_metric_compatibility(&self, g: &MetricField) -> Verdict {
        let n = self.space.dim();
        let gm = g.matrix();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    let lhs = self.space.derive(&gm[(b, c)], a);
                    let mut rhs = RatFun::zero();
                    for d in 0..n {
                        rhs = &rhs + &(&self.gamma[d][a][b] * &gm[(d, c)]);
                        rhs = &rhs + &(&self.gamma[d][a][c] * &gm[(b, d)]);
                    }
                    if lhs != rhs {
                        let name = |i| self.space.basis_vector_name(i);
                        return Verdict::failed(format!("∇g({}; {}, {}) = {}", name(a), name(b), name(c), self.space.show(&(&lhs - &rhs))), "∇g = 0");
                    }
                }
            }
        }
        Verdict::verified("∇g = 0")
    }
}

/// `∇_{Z_i} Z_j` and the second fundamental form of the Reeb orbits.
#[derive(Clone, Debug)]
pub struct GeodesyReport {
    /// `nabla[i][j] = ∇_{Z_{i+1}} Z_{j+1}`.
    pub nabla: Vec<Vec<VectorField>>,
    /// Components tangent to `span{Z1, Z2}`.
    pub tangential: Vec<Vec<VectorField>>,
    /// `B(Z_i, Z_j)`, the normal components.
    pub second_fundamental: Vec<Vec<VectorField>>,
    /// Gram matrix of `{Z1, Z2}` is the identity.
    pub gram: Verdict,
    /// All `∇_{Z_i} Z_j ≡ 0`.
    pub geodesic: Verdict,
    /// All `B(Z_i, Z_j) ≡ 0`.
    pub totally_geodesic: Verdict,
}

pub fn reeb_geodesy(cps: &ContactPairStructure, g: &MetricField) -> Result<GeodesyReport> {
    if let Some(w) = is_compatible(cps, g).witness() {
        return Err(Error::Precondition(format!("metric is not compatible: {w}")));
    }
    let vp = cps.vp();
    let cd = christoffel(g)?;
    let zs = [vp.z(1), vp.z(2)];
    let gram_m = RfMatrix::from_fn(2, 2, |i, j| g.apply(zs[i], zs[j]).expect("same space"));
    let gram = Verdict::check(gram_m == RfMatrix::identity(2), "g(Z_i, Z_j) = δ_ij", || {
        let (i, j, v) = (&gram_m - &RfMatrix::identity(2)).first_nonzero().map(|(i, j, v)| (i, j, v.clone())).expect("nonzero");
        format!("g(Z{}, Z{}) - δ = {}", i + 1, j + 1, vp.space().show(&v))
    });
    let gram_inv = gram_m.inverse().ok_or_else(|| Error::DegenerateMetric("Reeb fields are null".into()))?;
    let mut nabla = Vec::new();
    let mut tangential = Vec::new();
    let mut second = Vec::new();
    for zi in zs {
        let (mut nr, mut tr, mut sr) = (Vec::new(), Vec::new(), Vec::new());
        for zj in zs {
            let v = cd.covariant_derivative(zi, zj)?;
            let proj: Vec<RatFun> = (0..2).map(|m| g.apply(&v, zs[m]).expect("same space")).collect();
            let mut t = VectorField::zero(vp.space());
            for l in 0..2 {
                let coef = (0..2).fold(RatFun::zero(), |acc, m| &acc + &(&gram_inv[(l, m)] * &proj[m]));
                t = t.add(&zs[l].scale(&coef))?;
            }
            sr.push(v.sub(&t)?);
            tr.push(t);
            nr.push(v);
        }
        nabla.push(nr);
        tangential.push(tr);
        second.push(sr);
    }
    let first_nonzero = |m: &Vec<Vec<VectorField>>, what: &str| {
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    return Some(format!("{what}(Z{}, Z{}) = {}", i + 1, j + 1, v.display()));
                }
            }
        }
        None
    };
    let geodesic = match first_nonzero(&nabla, "∇") {
        None => Verdict::verified("∇_{Z_i} Z_j = 0 for i, j = 1, 2"),
        Some(w) => Verdict::failed(w, "Reeb orbits are geodesics"),
    };
    let totally_geodesic = match first_nonzero(&second, "B") {
        None => Verdict::verified("B(Z_i, Z_j) = 0"),
        Some(w) => Verdict::failed(w, "Reeb action is totally geodesic"),
    };
    Ok(GeodesyReport { nabla, tangential, second_fundamental: second, gram, geodesic, totally_geodesic })
}

/// Pointwise data for the geodesic residual, with each entry pre-evaluated.
struct NumericField<'a> {
    z: &'a VectorField,
    jac: Vec<Vec<RatFun>>,
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::PoleAtPoint(what.to_string()))
    }
}

impl NumericField<'_> {
    fn value(&self, p: &[f64]) -> Result<Vec<f64>> {
        self.z.eval_f64(p).into_iter().map(|v| finite(v, "vector field")).collect()
    }
}

/// Integrates the flow of `Z` by RK4 and returns the largest value of
/// `|γ̈ + Γ(γ̇, γ̇)|` along the computed curve. On a Lie frame this is the
/// constant `|∇_Z Z|`.
pub fn numeric_geodesic_residual(g: &MetricField, cd: &ChristoffelData, z: &VectorField, start: &[f64], t_end: f64, dt: f64) -> Result<f64> {
    if dt <= 0.0 {
        return Err(Error::Precondition("dt must be positive".into()));
    }
    let space = g.space();
    let n = space.dim();
    if space.is_lie() {
        let v = cd.covariant_derivative(z, z)?;
        return Ok(v.eval_f64(&[]).iter().fold(0.0, |a: f64, x| a.max(x.abs())));
    }
    if start.len() != n {
        return Err(Error::Dimension(format!("start point of length {} on a {n}-chart", start.len())));
    }
    let field = NumericField { z, jac: (0..n).map(|c| (0..n).map(|a| z.components()[c].partial(a)).collect()).collect() };
    let residual = |p: &[f64]| -> Result<f64> {
        let gm = DMatrix::from_fn(n, n, |r, c| g.matrix()[(r, c)].eval_f64(p));
        if gm.iter().any(|x| !x.is_finite()) || gm.cholesky().is_none() {
            return Err(Error::DegenerateMetric(format!("metric not positive definite at {p:?}")));
        }
        let v = field.value(p)?;
        let mut worst = 0.0f64;
        for c in 0..n {
            let mut acc = 0.0;
            for a in 0..n {
                if v[a] != 0.0 {
                    acc += field.jac[c][a].eval_f64(p) * v[a];
                }
            }
            for a in 0..n {
                if v[a] == 0.0 {
                    continue;
                }
                for b in 0..n {
                    if v[b] == 0.0 || cd.gamma[c][a][b].is_zero() {
                        continue;
                    }
                    acc += cd.gamma[c][a][b].eval_f64(p) * v[a] * v[b];
                }
            }
            worst = worst.max(finite(acc, "Christoffel symbol")?.abs());
        }
        Ok(worst)
    };
    let steps = (t_end / dt).round() as usize;
    let mut p = start.to_vec();
    let mut worst = residual(&p)?;
    let axpy = |p: &[f64], k: &[f64], s: f64| -> Vec<f64> { p.iter().zip(k).map(|(a, b)| a + s * b).collect() };
    for _ in 0..steps {
        let k1 = field.value(&p)?;
        let k2 = field.value(&axpy(&p, &k1, dt / 2.0))?;
        let k3 = field.value(&axpy(&p, &k2, dt / 2.0))?;
        let k4 = field.value(&axpy(&p, &k3, dt))?;
        for i in 0..n {
            p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        worst = worst.max(residual(&p)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Rational};
    use crate::exterior::{Form, Space};
    use crate::pair::{ContactPair, VerifiedPair};
    use crate::exterior::EndoField;

    fn c(v: i64) -> RatFun {
        RatFun::from_int(v)
    }

    fn x(i: usize) -> RatFun {
        RatFun::var(i)
    }

    fn r6_cps_and_metric() -> (ContactPairStructure, MetricField) {
        let s = Space::chart(["x1", "y1", "x2", "y2", "z1", "z2"]).unwrap();
        let a1 = Form::from_terms(&s, 1, [(vec![4], c(1)), (vec![1], -&x(0))]).unwrap();
        let a2 = Form::from_terms(&s, 1, [(vec![5], c(1)), (vec![3], -&x(2))]).unwrap();
        let vp = VerifiedPair::new(ContactPair::new(&s, a1.clone(), a2.clone(), (1, 1), vec![vec![int(0); 6]]).unwrap()).unwrap();
        let z = c(0);
        let rows = vec![
            vec![z.clone(), z.clone(), c(-1), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), c(-1), z.clone(), z.clone()],
            vec![c(1), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), c(1), z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), -&x(0), z.clone(), z.clone()],
            vec![z.clone(), x(2), z.clone(), z.clone(), z.clone(), z],
        ];
        let phi = EndoField::new(&s, RfMatrix::from_rows(rows)).unwrap();
        let coframe: Vec<Form> = (0..4).map(|a| Form::basis(&s, a)).chain([a1, a2]).collect();
        let g = MetricField::sum_of_squares(&s, &coframe).unwrap();
        (ContactPairStructure::new(vp, phi).unwrap(), g)
    }

    #[test]
    fn euclidean_is_flat() {
        let s = Space::chart(["x", "y"]).unwrap();
        let cd = christoffel(&MetricField::euclidean(&s)).unwrap();
        assert!(cd.is_zero());
        let v = cd.covariant_derivative(&VectorField::basis(&s, 0), &VectorField::basis(&s, 1)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn polar_metric_symbols() {
        // g = dr² + r² dθ²: Γ^r_θθ = -r, Γ^θ_rθ = 1/r
        let s = Space::chart(["r", "t"]).unwrap();
        let g = MetricField::new(&s, RfMatrix::from_rows(vec![vec![c(1), c(0)], vec![c(0), x(0).pow(2)]])).unwrap();
        let cd = christoffel(&g).unwrap();
        assert_eq!(cd.symbol(0, 1, 1), &-&x(0));
        assert_eq!(cd.symbol(1, 0, 1), &x(0).recip().unwrap());
        assert_eq!(cd.symbol(1, 1, 0), &x(0).recip().unwrap());
        assert!(cd.check_metric_compatibility(&g).is_verified());
        assert!(cd.check_torsion_free().is_verified());
    }

    #[test]
    fn r6_geodesy() {
        let (cps, g) = r6_cps_and_metric();
        let rep = reeb_geodesy(&cps, &g).unwrap();
        assert!(rep.gram.is_verified());
        assert!(rep.geodesic.is_verified(), "{:?}", rep.geodesic);
        assert!(rep.totally_geodesic.is_verified());
        let cd = christoffel(&g).unwrap();
        assert!(cd.check_metric_compatibility(&g).is_verified());
        assert!(cd.check_torsion_free().is_verified());
        let r = numeric_geodesic_residual(&g, &cd, cps.vp().z(1), &[0.0; 6], 1.0, 1e-3).unwrap();
        assert!(r < 1e-8);
    }

    #[test]
    fn negative_control_residual() {
        let (cps, g) = r6_cps_and_metric();
        let s = cps.space().clone();
        let cd = christoffel(&g).unwrap();
        let w = VectorField::new(&s, vec![c(1), x(0), c(0), c(0), c(0), c(0)]).unwrap();
        let r = numeric_geodesic_residual(&g, &cd, &w, &[0.0; 6], 1.0, 1e-3).unwrap();
        assert!(r > 1e-3, "residual {r}");
    }

    #[test]
    fn euclidean_constant_field_residual() {
        let s = Space::chart(["x", "y"]).unwrap();
        let g = MetricField::euclidean(&s);
        let cd = christoffel(&g).unwrap();
        let r = numeric_geodesic_residual(&g, &cd, &VectorField::basis(&s, 0), &[0.0, 0.0], 1.0, 1e-3).unwrap();
        assert!(r < 1e-14);
    }

    #[test]
    fn koszul_on_heisenberg_frame() {
        // dω3 = ω1∧ω2 gives [X1, X2] = -X3; ∇_{X1}X2 = ½[X1, X2].
        let s = Space::lie_from_differentials(["w1", "w2", "w3"], &[vec![], vec![], vec![(0, 1, Rational::from_integer(1.into()))]]).unwrap();
        let g = MetricField::euclidean(&s);
        let cd = christoffel(&g).unwrap();
        let v = cd.covariant_derivative(&VectorField::basis(&s, 0), &VectorField::basis(&s, 1)).unwrap();
        assert_eq!(v, VectorField::basis(&s, 2).scale(&RatFun::constant(crate::algebra::rat(-1, 2))));
        assert!(cd.check_torsion_free().is_verified());
        assert!(cd.check_metric_compatibility(&g).is_verified());
    }
}
